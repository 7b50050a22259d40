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

#include "floquet_toric/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

std::array<std::size_t, 4> chain_sites(const Lattice& lattice, Site a) {
  return {lattice.index(a), lattice.index({a.i, a.j + 1}), lattice.index({a.i + 1, a.j}),
          lattice.index({a.i + 1, a.j + 1})};
}

void check_size(const Lattice& lattice) {
  if (lattice.n_sites() > kStateVectorLimit) {
    throw Error(ErrorCode::kTooLarge, "lattice exceeds the statevector limit");
  }
}

}  // namespace

StateVector initial_state(const Lattice& lattice) {
  check_size(lattice);
  StateVector s(lattice.n_sites());
  const Eigen::MatrixXcd h = hadamard();
  for (std::size_t k = 0; k < static_cast<std::size_t>(lattice.n_sites()); ++k) {
    if (!lattice.site(k).is_even()) {
      const std::size_t site[1] = {k};
      apply_gate(s, site, h);
    }
  }
  return s;
}

bool is_even_stabilizer(const Lattice& lattice, const PauliString& s) {
  for (const auto& [site, p] : s.letters()) {
    if (p == Pauli::X || p == Pauli::Y) return lattice.site(site).is_even();
  }
  return false;
}

StateVector projector_oracle(const Lattice& lattice) {
  StateVector s = initial_state(lattice);
  for (const PauliString& stab : stabilizer_terms(lattice)) {
    if (!is_even_stabilizer(lattice, stab)) continue;
    StateVector flipped = s;
    apply_pauli(flipped, stab);
    s.amplitudes() = (s.amplitudes() + flipped.amplitudes()) / std::sqrt(2.0);
  }
  s.normalize();
  return s;
}

std::vector<PrepGate> build_prep_sequence(const Lattice& lattice) {
  if (lattice.spec().boundary != Boundary::kOpen) {
    throw Error(ErrorCode::kUnsupportedGeometry,
                "preparation sequences are defined for open boundaries only");
  }
  std::map<int, std::vector<Site>> diagonals;
  for (const Plaquette& p : lattice.plaquettes()) {
    if (p.parity == Parity::kEven) diagonals[p.anchor.i - p.anchor.j].push_back(p.anchor);
  }
  if (diagonals.empty()) {
    throw Error(ErrorCode::kUnsupportedGeometry, "lattice has no even plaquettes");
  }
  const int last_column = lattice.cols() - 1;
  std::vector<PrepGate> gates;
  for (auto& [d, anchors] : diagonals) {
    std::sort(anchors.begin(), anchors.end(), [](Site a, Site b) { return a.i < b.i; });
    const bool left = anchors.front().i == 1;
    const bool right = anchors.back().i == last_column;
    const PrepKind kind = (!left && right) ? PrepKind::kB : PrepKind::kA;
    // A runs bottom-left to top-right, B the other way round.
    if (kind == PrepKind::kB) std::reverse(anchors.begin(), anchors.end());
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      gates.push_back(PrepGate{kind, anchors[k], static_cast<int>(k), d});
    }
  }
  std::stable_sort(gates.begin(), gates.end(), [](const PrepGate& a, const PrepGate& b) {
    return a.group != b.group ? a.group < b.group : a.diagonal < b.diagonal;
  });
  return gates;
}

int prep_depth(const std::vector<PrepGate>& gates) {
  int depth = 0;
  for (const PrepGate& g : gates) depth = std::max(depth, g.group + 1);
  return depth;
}

PauliString local_prep_operator(PrepKind kind) {
  return kind == PrepKind::kA ? PauliString::parse("X0.Z1.Z2.Y3")
                              : PauliString::parse("Y0.Z1.Z2.X3");
}

PauliString prep_operator(const Lattice& lattice, const PrepGate& gate) {
  const auto sites = chain_sites(lattice, gate.anchor);
  return local_prep_operator(gate.kind).relabeled(sites);
}

FloquetGateSource floquet_gate_source(const PlaquetteDriveParams& params) {
  const DriveSpec drive = plaquette_drive(params);
  const Eigen::MatrixXcd u = propagator(drive, kDrivePeriod).unitary;
  FloquetGateSource src;
  src.extracted_jtau = extract_jtau(
      from_dense(effective_hamiltonian(u, kDrivePeriod), 4), plaquette_target(), -1.0);
  if (std::abs(src.extracted_jtau - std::numbers::pi / 8) > kGateCouplingTolerance) {
    throw Error(ErrorCode::kWrongCoupling,
                "gate drive has J tau = " + std::to_string(src.extracted_jtau) +
                    ", expected pi/8");
  }
  src.two_period = nearest_unitary(u * u);
  return src;
}

Eigen::MatrixXcd gate_unitary(PrepKind kind, GateMode mode, const FloquetGateSource* source) {
  if (mode == GateMode::kIdeal) {
    return rotation_unitary(local_prep_operator(kind), 4, -std::numbers::pi / 4);
  }
  if (source == nullptr) {
    throw Error(ErrorCode::kMissingParams, "Floquet gates need a drive");
  }
  // exp(+i pi Z/4) U exp(-i pi Z/4) on the corner that turns X into Y.
  const std::size_t corner = kind == PrepKind::kA ? 3 : 0;
  const Eigen::MatrixXcd z =
      rotation_unitary(PauliString::single(corner, Pauli::Z), 4, -std::numbers::pi / 4);
  return z.adjoint() * source->two_period * z;
}

StateVector execute_prep(const Lattice& lattice, const std::vector<PrepGate>& gates,
                         GateMode mode, const FloquetGateSource* source) {
  const Eigen::MatrixXcd ga = gate_unitary(PrepKind::kA, mode, source);
  const Eigen::MatrixXcd gb = gate_unitary(PrepKind::kB, mode, source);
  StateVector s = initial_state(lattice);
  for (const PrepGate& g : gates) {
    const auto sites = chain_sites(lattice, g.anchor);
    apply_gate(s, sites, g.kind == PrepKind::kA ? ga : gb);
  }
  return s;
}

PrepDiagnostics prep_diagnostics(const Lattice& lattice, const StateVector& state,
                                 double coupling) {
  PrepDiagnostics d;
  for (const PauliString& s : stabilizer_terms(lattice)) {
    const double v = expectation_string(state, s).real();
    d.stabilizers.emplace_back(s, v);
    d.min_stabilizer = std::min(d.min_stabilizer, v);
    d.energy -= coupling * v;
  }
  d.ground_energy = -coupling * static_cast<double>(d.stabilizers.size());
  d.fidelity = fidelity(state, projector_oracle(lattice));
  return d;
}

PrepResult run_prep(const Lattice& lattice, GateMode mode,
                    const std::optional<PlaquetteDriveParams>& params, double coupling) {
  std::optional<FloquetGateSource> src;
  if (mode == GateMode::kFloquet) {
    if (!params) throw Error(ErrorCode::kMissingParams, "Floquet preparation needs a drive");
    src = floquet_gate_source(*params);
  }
  std::vector<PrepGate> gates = build_prep_sequence(lattice);
  StateVector state = execute_prep(lattice, gates, mode, src ? &*src : nullptr);
  PrepDiagnostics diag = prep_diagnostics(lattice, state, coupling);
  return PrepResult{std::move(state), std::move(gates), std::move(diag)};
}

}  // namespace floquet_toric
