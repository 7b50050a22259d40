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

// Shared helpers for the unit tests: random operator generators and dense
// reference computations that do not go through the library's own code paths.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "floquet_toric/pauli_algebra.hpp"

namespace floquet_toric::testing {

inline Eigen::Matrix2cd pauli_matrix(Pauli p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Kronecker-product construction, independent of to_dense. Site k is bit k,
/// so the highest site is the leftmost Kronecker factor.
inline Eigen::MatrixXcd kron_string(const PauliString& s, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int site = n - 1; site >= 0; --site) {
    Eigen::MatrixXcd next =
        Eigen::kroneckerProduct(m, pauli_matrix(s.at(static_cast<std::size_t>(site))))
            .eval();
    m = next;
  }
  return m;
}

inline Eigen::MatrixXcd kron_sum(const PauliSum& a, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : a.terms()) m += c * kron_string(s, n);
  return m;
}

inline PauliString random_string(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> letter(0, 3);
  PauliString s;
  for (int k = 0; k < n; ++k) {
    s.set(static_cast<std::size_t>(k), static_cast<Pauli>(letter(rng)));
  }
  return s;
}

inline PauliSum random_sum(std::mt19937_64& rng, int n, int n_terms,
                           bool hermitian) {
  std::normal_distribution<double> g(0.0, 1.0);
  PauliSum out;
  for (int k = 0; k < n_terms; ++k) {
    const std::complex<double> c =
        hermitian ? std::complex<double>(g(rng), 0.0)
                  : std::complex<double>(g(rng), g(rng));
    out.add(random_string(rng, n), c);
  }
  return out;
}

}  // namespace floquet_toric::testing
