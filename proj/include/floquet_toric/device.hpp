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
 * The nine-spin device: quasienergy spectra, logical observables, and
 * Floquet-adiabatic preparation under a ramped transverse field.
 *
 * The transverse field R raises the plaquette and three-spin drives' static X
 * amplitudes by R and acts as +R X on idle spins, so |-->^9 is the starting
 * ground state at large R.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floquet_toric/drive_optimizer.hpp"
#include "floquet_toric/lattice_model.hpp"
#include "floquet_toric/topology_probes.hpp"
#include "floquet_toric/trotter_engine.hpp"

namespace floquet_toric {

inline constexpr double kDeviceCoupling = 0.01;

struct DeviceParams {
  /// J realized by the plaquette and boundary drives.
  double coupling = kDeviceCoupling;
  PlaquetteDriveParams plaquette;
  BoundaryDriveParams boundary;
  /// Three-spin drive for the X_L substep and the J_xzx tau it realizes.
  std::optional<ThreeSpinDriveParams> three_spin;
  double three_spin_jtau = 0.0;
};

/// The same drive with field_1 and coupling_12 negated: conjugation by Z on
/// the first spin, which flips the sign of X0 Z1 X2 exactly.
ThreeSpinDriveParams reversed_three_spin(const ThreeSpinDriveParams& p);

/// Sites of X_L in three-spin drive order: (1,2), (2,2), (3,2).
std::vector<std::size_t> logical_x_sites(const Lattice& device);

/// Four substeps for the plaquette and boundary terms plus, with include_xl,
/// a fifth driving X_L with the three-spin drive. xl_sign picks the sign of
/// the realized X_L coupling (the drive is reversed when needed). field is
/// the transverse field R. Throws kMissingParams and kUnsupportedGeometry.
TrotterSequence device_sequence(const Lattice& device, const DeviceParams& params,
                                bool include_xl, double field, int xl_sign = 1,
                                int n_steps = 0);

/// H_w + xl_coupling X_L + field sum X, with H_w = -J sum of stabilizers.
PauliSum device_hamiltonian(const Lattice& device, double coupling, double xl_coupling,
                            double field = 0.0);

/// Quasienergies -arg(lambda)/T of the period propagator, folded into
/// (-pi/T, pi/T] and sorted ascending. Limited to kDenseSequenceLimit sites.
std::vector<double> quasienergy_spectrum(const TrotterSequence& seq);

/// Folds phases/T into (-pi/T, pi/T] and sorts.
std::vector<double> fold_quasienergies(std::vector<double> phases, double period);

/// Folded spectrum of the period-averaged ideal Hamiltonian at R = 0: every
/// stabilizer (and X_L) acts for one drive period per sequence period.
std::vector<double> reference_quasienergies(const Lattice& device, double coupling, double xl_coupling,
                                            double period);

/// Ground eigenvector of h by dense diagonalization.
StateVector ground_state(const PauliSum& h, int n_sites);

/// (<X_L>, <Z_L>).
std::pair<double, double> logical_expectations(const Lattice& device, const StateVector& state);

enum class RampShape { kArctan, kLinear };

struct RampSchedule {
  double initial_field = 0.05;
  int periods = 200;
  RampShape shape = RampShape::kArctan;
  double steepness = 15.0;

  /// r(s) for s = t / t_f in [0, 1]: r(0) = 1, r(1) = 0, non-increasing.
  double ramp(double s) const;
  /// Field held during period k (0-based): R0 r((k + 1) / periods).
  double field(int period) const;
};

struct AdiabaticSample {
  int step = 0;
  /// In drive periods tau.
  double time = 0.0;
  double field = 0.0;
  double fidelity = 0.0;
  double topological_entropy = 0.0;
  double x_l = 0.0;
  double z_l = 0.0;
};

struct AdiabaticResult {
  std::vector<AdiabaticSample> trajectory;
  StateVector final_state{0};
  StateVector target{0};
};

/// Starts in |-->^9 and applies one device period per step with the field
/// ramped down. sign +1 targets the ground state of H_w + J X_L (|-_L>),
/// -1 that of H_w - J X_L. The first sample (step 0) is the initial state.
AdiabaticResult adiabatic_run(const Lattice& device, const DeviceParams& params,
                              const RampSchedule& schedule, int sign, int n_steps = 256);

/// |-->^n.
StateVector minus_state(int n_sites);

}  // namespace floquet_toric
