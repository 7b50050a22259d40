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
 * Driven-subsystem propagators, effective-Hamiltonian extraction, and a
 * statevector engine for lattice-scale evolution.
 *
 * Energies are in units of the drive frequency (omega = 1), so one drive
 * period is 2*pi. Basis index bit k is site k throughout.
 */

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "floquet_toric/pauli_algebra.hpp"

namespace floquet_toric {

inline constexpr double kDrivePeriod = 2.0 * std::numbers::pi;

enum class HarmonicKind { kCosine, kSine };

struct Harmonic {
  int multiple = 1;
  double amplitude = 0.0;
  HarmonicKind kind = HarmonicKind::kCosine;
};

/// f(t) = constant + sum_n amp_n * {cos,sin}(multiple_n * t).
struct Waveform {
  double constant = 0.0;
  std::vector<Harmonic> harmonics;

  static Waveform constant_value(double c) { return Waveform{c, {}}; }

  double operator()(double t) const;

  /// True when only cosine harmonics are present, so f(t) = f(period - t).
  bool is_time_symmetric() const;
  bool is_zero() const;
};

struct DriveTerm {
  PauliSum op;
  Waveform waveform;
};

/// H(t) = sum_k waveform_k(t) * op_k on a small subsystem of n_sites.
struct DriveSpec {
  int n_sites = 0;
  std::vector<DriveTerm> terms;

  void add(PauliSum op, Waveform w) {
    terms.push_back(DriveTerm{std::move(op), std::move(w)});
  }
  bool is_time_symmetric() const;
};

inline constexpr int kMaxDenseDriveSites = 6;

/// Precomputed dense drive for repeated propagation of the same DriveSpec.
class DenseDrive {
 public:
  explicit DenseDrive(const DriveSpec& drive);

  int n_sites() const { return n_sites_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_sites_; }

  /// H(t) as a dense Hermitian matrix.
  Eigen::MatrixXcd at(double t) const;

  /// exp(-i h (w1 H(t1) + w2 H(t2))) for the commutator-free step.
  Eigen::MatrixXcd step_exponential(double t1, double w1, double t2, double w2,
                                    double h) const;

 private:
  int n_sites_;
  bool real_;
  std::vector<Waveform> waveforms_;
  std::vector<Eigen::MatrixXcd> mats_;
  std::vector<Eigen::MatrixXd> real_mats_;
};

/// Time-ordered propagator over [0, duration] with a fixed number of
/// fourth-order commutator-free Magnus steps, projected onto the nearest
/// unitary to remove accumulated rounding drift.
Eigen::MatrixXcd propagator_fixed(const DenseDrive& drive, double duration,
                                  int n_steps);

struct PropagatorResult {
  Eigen::MatrixXcd unitary;
  int n_steps = 0;
};

inline constexpr int kMaxPropagatorSteps = 1 << 20;

/// Doubles the step count from n_sub until successive Richardson-extrapolated
/// propagators agree to tol in Frobenius norm. Throws kNonConvergence past
/// 2^20 steps.
PropagatorResult propagator(const DriveSpec& drive, double duration,
                            int n_sub = 64, double tol = 1e-12);

/// Unitary polar factor of m.
Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m);

/// exp(-i t H) for Hermitian H.
Eigen::MatrixXcd exp_hermitian(const Eigen::MatrixXcd& h, double t);

/// H with exp(-i duration H) = U, principal branch, traceless gauge.
/// Throws kBranchAmbiguity when an eigenphase sits within 1e-6 of +-pi.
Eigen::MatrixXcd effective_hamiltonian(const Eigen::MatrixXcd& u,
                                       double duration);

/// Eigenphases -arg(lambda) in (-pi, pi] of a unitary, ascending.
std::vector<double> eigenphases(const Eigen::MatrixXcd& u);

inline constexpr int kStateVectorLimit = 25;
inline constexpr int kMaxGateSites = 6;

class StateVector {
 public:
  /// |0...0> on n_sites.
  explicit StateVector(int n_sites);
  StateVector(int n_sites, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int n_sites, std::uint64_t index);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  void normalize();

  /// <this|other>.
  Complex inner(const StateVector& other) const;

 private:
  int n_sites_;
  Eigen::VectorXcd amps_;
};

/// Applies u_local to the listed sites; local bit k of u_local is sites[k].
void apply_gate(StateVector& state, std::span<const std::size_t> sites,
                const Eigen::MatrixXcd& u_local);

/// state <- P state.
void apply_pauli(StateVector& state, const PauliString& p);

/// Returns A|state> (not normalized).
StateVector apply_sum(const StateVector& state, const PauliSum& a);

/// <state|P|state>.
Complex expectation_string(const StateVector& state, const PauliString& p);

/// <state|A|state> for Hermitian A, evaluated string by string.
double expectation(const StateVector& state, const PauliSum& a);

/// |<a|b>|^2 for normalized states.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace floquet_toric
