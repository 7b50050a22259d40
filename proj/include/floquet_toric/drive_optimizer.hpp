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
 * Drive synthesis for the plaquette, boundary and three-spin interactions,
 * and robustness sweeps under parameter noise.
 *
 * Plaquette drives act on the local chain e1-m1-m2-e2 (local sites 0..3):
 *   H(t) = W1 X0 + W4 X3 + sum_k (s_k + a_k cos(n_k t)) (X_k X_k+1 + Y_k Y_k+1).
 * The target is exp(i J tau X0 Z1 Z2 X3), i.e. H_eff = -J X0 Z1 Z2 X3.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "floquet_toric/pauli_algebra.hpp"
#include "floquet_toric/propagation.hpp"

namespace floquet_toric {

struct PlaquetteDriveParams {
  double field_e1 = 0.0;
  double field_e2 = 0.0;
  std::array<double, 3> static_coupling{};
  std::array<double, 3> harmonic_coupling{};
  std::array<int, 3> harmonic_multiple{1, 2, 2};

  static constexpr std::size_t kSize = 8;
  std::array<double, kSize> to_array() const;
  static PlaquetteDriveParams from_array(std::span<const double> x,
                                         std::array<int, 3> multiples = {1, 2, 2});
};

/// g cos(t) (X_a X_b + Y_a Y_b) + lambda sin(t) Y_b on local sites a=0, b=1.
struct BoundaryDriveParams {
  double coupling = 0.0;
  double lambda = 0.0;
};

/// W1 X0 + W3 X2 + g12 K01 + g23 K12 + z(t) Z1 with
/// z(t) = z0 + z1 cos(t) + z2 cos(2t).
struct ThreeSpinDriveParams {
  double field_1 = 0.0;
  double field_3 = 0.0;
  double coupling_12 = 0.0;
  double coupling_23 = 0.0;
  std::array<double, 3> z{};

  static constexpr std::size_t kSize = 7;
  std::array<double, kSize> to_array() const;
  static ThreeSpinDriveParams from_array(std::span<const double> x);
};

/// field shifts the static single-spin X amplitudes (field_e1/field_e2 or
/// field_1/field_3); sites without one are left alone.
DriveSpec plaquette_drive(const PlaquetteDriveParams& p, double field = 0.0);
DriveSpec boundary_drive(const BoundaryDriveParams& p);
DriveSpec three_spin_drive(const ThreeSpinDriveParams& p, double field = 0.0);

/// Local target strings.
PauliString plaquette_target();   // X0 Z1 Z2 X3
PauliString boundary_target();    // X0 Z1
PauliString three_spin_target();  // X0 Z1 X2

/// exp(i angle P) on n_sites.
Eigen::MatrixXcd rotation_unitary(const PauliString& p, int n_sites, double angle);

/// min_phi ||U - e^{i phi} V||_F = sqrt(2d - 2|tr(V^dag U)|).
double phase_aligned_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// 1 - |tr(V^dag U)| / d.
double infidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// Objective for a drive: phase-aligned Frobenius distance between the
/// one-period propagator and exp(-i tau H_target), H_target = sign*J*P.
/// The plaquette and boundary targets use sign -1 so exp(i J tau P).
double objective(const PlaquetteDriveParams& p, double jtau, int n_steps = 0);

struct OptimizationReport {
  double final_infidelity = 1.0;
  double objective = 0.0;
  double extracted_jtau = 0.0;
  double error_ratio = 0.0;
  double max_other_ratio = 0.0;
  int iterations = 0;
  int evaluations = 0;
  int best_restart = -1;
  PauliSum coefficients;
};

struct OptimizerSettings {
  int restarts = 16;
  /// Restarts run in fixed batches; later batches are skipped once some
  /// restart reaches accept_value. Results do not depend on the thread count.
  int batch = 4;
  double accept_value = 1e-9;
  /// A minimisation stops once its squared distance falls below this.
  double value_floor = 1e-12;
  double perturbation = 0.1;
  double fd_step = 1e-6;
  /// Step count of the fixed-step propagator inside the search loop.
  int search_steps = 128;
  /// Step count for the final constrained polish.
  int polish_steps = 256;
  int max_iterations = 400;
  double gradient_tol = 1e-9;
  /// Weight of (extracted J tau - target)^2 during the polish.
  double constraint_weight = 1e3;
  double success_infidelity = 1e-2;
  std::array<int, 3> harmonic_multiple{1, 2, 2};
};

struct PlaquetteResult {
  PlaquetteDriveParams params;
  OptimizationReport report;
};
struct BoundaryResult {
  BoundaryDriveParams params;
  OptimizationReport report;
};
struct ThreeSpinResult {
  ThreeSpinDriveParams params;
  OptimizationReport report;
};

/// Two-stage synthesis: harmonic amplitudes first, then all parameters from
/// perturbed restarts; the best restart is polished against the J tau
/// constraint. Throws kOptimizationFailed if no restart reaches
/// success_infidelity.
PlaquetteResult optimize_plaquette(double jtau, std::uint64_t seed,
                                   const OptimizerSettings& settings = {});
BoundaryResult optimize_boundary(double jtau, std::uint64_t seed,
                                 const OptimizerSettings& settings = {});
/// Target H_eff = +J_xzx X0 Z1 X2; jtau is J_xzx * tau.
ThreeSpinResult optimize_three_spin(double jtau, std::uint64_t seed,
                                    const OptimizerSettings& settings = {});

/// Builds the report for a given drive with the converged propagator.
/// target_sign is -1 for H_eff = -J P, +1 for H_eff = +J P.
OptimizationReport analyze_drive(const DriveSpec& drive, const PauliString& target,
                                 double jtau, double target_sign);

/// Signed coefficient of target in H_eff divided out so that the return value
/// is J tau under the given sign convention.
double extract_jtau(const PauliSum& heff, const PauliString& target,
                    double target_sign);

struct RobustnessEntry {
  PauliString string;
  double magnitude = 0.0;
};

struct RobustnessResult {
  /// Mean over realizations of |c_l| for every string seen.
  PauliSum mean_magnitude;
  /// Decomposition of the realization-averaged effective Hamiltonian.
  PauliSum averaged_hamiltonian;
  /// Per weight: the string with largest mean magnitude.
  std::map<std::size_t, RobustnessEntry> weight_maxima;
  int realizations = 0;
};

/// Perturbs every parameter by an independent uniform draw from
/// [-eta_max, eta_max] per realization and accumulates effective
/// Hamiltonians. Realization k uses an RNG stream derived from (seed, k).
RobustnessResult robustness_sweep(const PlaquetteDriveParams& params,
                                  double eta_max, int n, std::uint64_t seed,
                                  int n_steps = 256);

/// Whether the target carries the largest weight-4 magnitude and exceeds
/// every other coefficient by at least the given factor.
bool target_dominant(const PauliSum& magnitudes, const PauliString& target,
                     double factor);

/// Generic minimiser used by the synthesis routines: BFGS on central finite
/// differences with a backtracking Armijo line search. Stops early once the
/// value drops below value_floor.
struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};
MinimizeResult minimize_bfgs(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, double fd_step,
                             int max_iterations, double gradient_tol,
                             double value_floor = 0.0);

}  // namespace floquet_toric
