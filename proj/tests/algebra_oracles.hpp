// Copyright 2026 The floquet-toric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent algebraic references for the single-plaquette drive: the
// control Lie algebra by dense commutator closure, the strings spanning it,
// and the eight strings a time-symmetric cosine drive must never generate.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace floquet_toric::testing {

// Letters listed from site 0 upwards, e.g. "IXZZ" is X1 Z2 Z3.
inline PauliString from_letters(const std::string& s) {
  PauliString p;
  for (std::size_t k = 0; k < s.size(); ++k) p.set(k, pauli_from_char(s[k]));
  return p;
}

inline const std::vector<std::string>& closure_strings() {
  static const std::vector<std::string> kStrings{
      "IIIX", "IIXX", "IIYY", "IIYZ", "IXXI", "IXZY", "IXZZ", "IYYI", "IYZX", "XIII", "XXII",
      "XZYI", "XZZX", "YYII", "YZXI", "YZZY", "YZZZ", "ZYII", "ZZXI", "ZZZY", "ZZZZ"};
  return kStrings;
}

inline const std::vector<PauliString>& cartan_h_strings() {
  static const std::vector<PauliString> kStrings{
      PauliString::parse("Z0.Y1"),       PauliString::parse("Y2.Z3"),
      PauliString::parse("X0.Z1.Y2"),    PauliString::parse("Y0.Z1.X2"),
      PauliString::parse("X1.Z2.Y3"),    PauliString::parse("Y1.Z2.X3"),
      PauliString::parse("Z0.Z1.Z2.Y3"), PauliString::parse("Y0.Z1.Z2.Z3")};
  return kStrings;
}

// Real orthonormal basis of anti-Hermitian span, stored as flattened vectors
// of (Re, Im) parts.
struct RealSpan {
  std::vector<Eigen::VectorXd> basis;

  static Eigen::VectorXd flatten(const Eigen::MatrixXcd& m) {
    Eigen::VectorXd v(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      v[2 * k] = m.data()[k].real();
      v[2 * k + 1] = m.data()[k].imag();
    }
    return v;
  }

  Eigen::VectorXd residual(const Eigen::MatrixXcd& m) const {
    Eigen::VectorXd v = flatten(m);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
    }
    return v;
  }

  bool insert(const Eigen::MatrixXcd& m) {
    Eigen::VectorXd v = residual(m);
    if (v.norm() < 1e-9 * std::max(1.0, flatten(m).norm())) return false;
    basis.push_back(v.normalized());
    return true;
  }
};

// Dynamical Lie algebra of the plaquette controls by repeated dense
// commutators until no new direction appears.
inline RealSpan control_algebra() {
  PauliSum k01(PauliString::parse("X0.X1"), 1.0);
  k01.add(PauliString::parse("Y0.Y1"), 1.0);
  PauliSum k12(PauliString::parse("X1.X2"), 1.0);
  k12.add(PauliString::parse("Y1.Y2"), 1.0);
  PauliSum k23(PauliString::parse("X2.X3"), 1.0);
  k23.add(PauliString::parse("Y2.Y3"), 1.0);
  const std::vector<Eigen::MatrixXcd> controls{
      kron_string(PauliString::parse("X0"), 4), kron_string(PauliString::parse("X3"), 4),
      kron_sum(k01, 4), kron_sum(k12, 4), kron_sum(k23, 4)};
  RealSpan span;
  std::vector<Eigen::MatrixXcd> elements;
  for (const auto& c : controls) {
    if (span.insert(c)) elements.push_back(c);
  }
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      const Eigen::MatrixXcd comm =
          std::complex<double>(0.0, 1.0) * (elements[a] * elements[b] - elements[b] * elements[a]);
      if (span.insert(comm)) elements.push_back(comm);
    }
  }
  return span;
}

}  // namespace floquet_toric::testing
