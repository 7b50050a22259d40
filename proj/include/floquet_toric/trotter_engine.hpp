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
 * Lattice-scale Floquet-Trotter sequences: each substep drives a set of
 * disjoint plaquettes and boundary pairs for one drive period.
 */

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "floquet_toric/drive_optimizer.hpp"
#include "floquet_toric/lattice_model.hpp"
#include "floquet_toric/propagation.hpp"

namespace floquet_toric {

enum class MemberKind { kPlaquette, kBoundary, kField, kCustom };

/// One driven subsystem inside a substep. Local site k is sites[k].
struct SubsystemDrive {
  MemberKind kind = MemberKind::kCustom;
  /// Plaquette index, boundary-term index or lattice site, by kind.
  std::size_t index = 0;
  std::vector<std::size_t> sites;
  DriveSpec drive;
  /// One-period propagator of drive.
  Eigen::MatrixXcd unitary;
};

struct Substep {
  std::vector<SubsystemDrive> members;
};

struct TrotterSequence {
  int n_sites = 0;
  std::vector<Substep> substeps;

  double period() const { return static_cast<double>(substeps.size()) * kDrivePeriod; }
};

struct SequenceOptions {
  /// Transverse field: a plain X field on idle sites and a shift of the
  /// plaquette drive's single-spin amplitudes. Boundary members get none.
  double field = 0.0;
  /// Fixed CF4 step count for member propagators; 0 selects the converged one.
  int n_steps = 0;
};

/// One substep per Trotter group (always kTrotterColors of them). Throws
/// kMissingParams when the lattice needs a drive whose parameters are absent.
TrotterSequence build_sequence(const Lattice& lattice,
                               const std::optional<PlaquetteDriveParams>& plaquette,
                               const std::optional<BoundaryDriveParams>& boundary,
                               const SequenceOptions& options = {});

/// Appends a substep and fills in any member unitaries left empty.
void append_substep(TrotterSequence& seq, Substep substep, int n_steps = 0);

/// Throws kInvalidSpec if two members of a substep share a site or a member
/// unitary does not match its site count.
void validate_sequence(const TrotterSequence& seq);

/// One full period, substeps in order, members in stored order.
void apply_period(StateVector& state, const TrotterSequence& seq);

/// Dense one-period unitary, built column by column (n_sites <= 12).
Eigen::MatrixXcd period_unitary(const TrotterSequence& seq);

inline constexpr int kDenseSequenceLimit = 12;

struct TargetComparison {
  PauliString string;
  double expected = 0.0;
  double actual = 0.0;
};

struct EffectiveHamiltonianReport {
  /// H with U(T) = exp(-i tau H), energies in units of omega. The full-period
  /// Floquet Hamiltonian is (tau / T) H.
  PauliSum hamiltonian;
  std::vector<TargetComparison> target_overlap;
  RobustnessEntry leading_error;
  std::map<std::size_t, RobustnessEntry> weight_maxima;
  double period = 0.0;
};

inline constexpr double kLatticeBchThreshold = 1e-9;
inline constexpr int kLatticeBchOrder = 14;

/// Dense per-member extraction, exact sums within substeps, then a BCH fold
/// across substeps in execution order, normalised by one drive period.
EffectiveHamiltonianReport effective_hamiltonian_symbolic(
    const TrotterSequence& seq, const PauliSum& target, int order = kLatticeBchOrder,
    double threshold = kLatticeBchThreshold);

/// Sum of the member generators of one substep: H_k with U_k = exp(-i tau H_k).
PauliSum substep_hamiltonian(const Substep& substep);

/// Rebuilds the comparison fields of a report from its Hamiltonian.
void refresh_report(EffectiveHamiltonianReport& report, const PauliSum& target);

struct ErrorSummary {
  PauliSum target_part;
  PauliSum residual;
  /// max over target strings of |actual - expected| / |expected|.
  double max_relative_deviation = 0.0;
  /// Largest residual over smallest desired magnitude.
  double residual_ratio = 0.0;
  RobustnessEntry residual_max;
  std::map<std::size_t, RobustnessEntry> residual_weight_maxima;
  /// Largest residual of weight >= long_weight.
  RobustnessEntry long_string_max;
};

ErrorSummary error_report(const EffectiveHamiltonianReport& report, const PauliSum& target,
                          std::size_t long_weight);

}  // namespace floquet_toric
