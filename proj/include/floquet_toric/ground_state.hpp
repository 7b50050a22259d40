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

/**
 * @file
 * Unitary ground-state preparation with four-spin gates on even plaquettes.
 *
 * A(i,j) = X(i,j) Z(i,j+1) Z(i+1,j) Y(i+1,j+1)
 * B(i,j) = Y(i,j) Z(i,j+1) Z(i+1,j) X(i+1,j+1)
 * and each gate is exp(-i pi G / 4). Gates run along bottom-left to
 * top-right diagonals; different diagonals commute.
 */

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "floquet_toric/drive_optimizer.hpp"
#include "floquet_toric/lattice_model.hpp"
#include "floquet_toric/propagation.hpp"

namespace floquet_toric {

enum class PrepKind { kA, kB };
enum class GateMode { kIdeal, kFloquet };

struct PrepGate {
  PrepKind kind = PrepKind::kA;
  Site anchor;
  /// Parallel layer: position of the gate along its diagonal.
  int group = 0;
  /// i - j of the anchor.
  int diagonal = 0;
};

/// Hadamard on every odd site of |0...0>.
StateVector initial_state(const Lattice& lattice);

/// Whether a stabilizer's X letters sit on even sites; exactly these are not
/// already fixed by the initial state.
bool is_even_stabilizer(const Lattice& lattice, const PauliString& s);

/// prod over even stabilizers of (1 + S)/sqrt(2) applied to the initial
/// state, renormalised.
StateVector projector_oracle(const Lattice& lattice);

/// Gates for every even plaquette of an open lattice, ordered by layer then
/// diagonal. Diagonals touching the left edge use A, otherwise those touching
/// the right edge use B, otherwise A. Throws kUnsupportedGeometry for mixed
/// boundaries.
std::vector<PrepGate> build_prep_sequence(const Lattice& lattice);

/// Number of parallel layers.
int prep_depth(const std::vector<PrepGate>& gates);

/// A or B of the gate on lattice sites.
PauliString prep_operator(const Lattice& lattice, const PrepGate& gate);

/// Local operator on the plaquette chain (e1, m1, m2, e2).
PauliString local_prep_operator(PrepKind kind);

/// Two-period propagator of the plaquette drive, checked against J tau = pi/8.
struct FloquetGateSource {
  Eigen::MatrixXcd two_period;
  double extracted_jtau = 0.0;
};

inline constexpr double kGateCouplingTolerance = 1e-4;

/// Throws kWrongCoupling if |J tau - pi/8| > 1e-4.
FloquetGateSource floquet_gate_source(const PlaquetteDriveParams& params);

/// Local 16x16 gate on the plaquette chain. Floquet mode conjugates the
/// two-period propagator by exp(-i pi Z / 4) on the corner carrying Y.
Eigen::MatrixXcd gate_unitary(PrepKind kind, GateMode mode,
                              const FloquetGateSource* source = nullptr);

struct PrepDiagnostics {
  std::vector<std::pair<PauliString, double>> stabilizers;
  double min_stabilizer = 1.0;
  double energy = 0.0;
  double ground_energy = 0.0;
  double fidelity = 0.0;
};

struct PrepResult {
  StateVector state;
  std::vector<PrepGate> gates;
  PrepDiagnostics diagnostics;
};

/// Applies the gates in order to the initial state.
StateVector execute_prep(const Lattice& lattice, const std::vector<PrepGate>& gates,
                         GateMode mode, const FloquetGateSource* source = nullptr);

/// Stabilizer expectations, energy of -coupling * sum S, exact ground energy
/// -coupling * (number of stabilizers), and fidelity to the oracle.
PrepDiagnostics prep_diagnostics(const Lattice& lattice, const StateVector& state,
                                 double coupling);

/// Full run. Floquet mode requires params; coupling defaults to J = 1/16.
PrepResult run_prep(const Lattice& lattice, GateMode mode,
                    const std::optional<PlaquetteDriveParams>& params = std::nullopt,
                    double coupling = 1.0 / 16.0);

}  // namespace floquet_toric
