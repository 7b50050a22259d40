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

#include "floquet_toric/trotter_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "floquet_toric/errors.hpp"
#include "floquet_toric/parallel.hpp"

namespace floquet_toric {
namespace {

Eigen::MatrixXcd member_unitary(const DriveSpec& drive, int n_steps) {
  if (n_steps > 0) return propagator_fixed(DenseDrive(drive), kDrivePeriod, n_steps);
  return propagator(drive, kDrivePeriod).unitary;
}

DriveSpec field_drive(double field) {
  DriveSpec d;
  d.n_sites = 1;
  d.add(PauliSum(PauliString::single(0, Pauli::X), 1.0), Waveform::constant_value(field));
  return d;
}

RobustnessEntry largest(const PauliSum& a) {
  RobustnessEntry best;
  for (const auto& [s, c] : a.sorted_terms()) {
    if (std::abs(c) > best.magnitude) best = RobustnessEntry{s, std::abs(c)};
  }
  return best;
}

std::map<std::size_t, RobustnessEntry> maxima_by_weight(const PauliSum& a) {
  std::map<std::size_t, RobustnessEntry> out;
  for (const auto& [w, entries] : weight_spectrum(a)) {
    if (!entries.empty()) out[w] = RobustnessEntry{entries.front().first, entries.front().second};
  }
  return out;
}

}  // namespace

TrotterSequence build_sequence(const Lattice& lattice,
                               const std::optional<PlaquetteDriveParams>& plaquette,
                               const std::optional<BoundaryDriveParams>& boundary,
                               const SequenceOptions& options) {
  if (!lattice.plaquettes().empty() && !plaquette) {
    throw Error(ErrorCode::kMissingParams, "lattice has plaquettes but no plaquette drive");
  }
  if (!lattice.boundary_terms().empty() && !boundary) {
    throw Error(ErrorCode::kMissingParams, "lattice has boundary terms but no boundary drive");
  }
  const TrotterGroups groups = partition_groups(lattice);

  // Every plaquette (and every boundary pair) runs the same drive, so one
  // propagator of each kind serves the whole lattice.
  std::optional<DriveSpec> pd, bd, fd;
  Eigen::MatrixXcd pu, bu, fu;
  if (plaquette) {
    pd = plaquette_drive(*plaquette, options.field);
    pu = member_unitary(*pd, options.n_steps);
  }
  if (boundary && !lattice.boundary_terms().empty()) {
    bd = boundary_drive(*boundary);
    bu = member_unitary(*bd, options.n_steps);
  }
  if (options.field != 0.0) {
    fd = field_drive(options.field);
    fu = exp_hermitian(to_dense(fd->terms.front().op, 1) * options.field, kDrivePeriod);
  }

  TrotterSequence seq;
  seq.n_sites = lattice.n_sites();
  for (const TrotterGroup& g : groups.groups) {
    Substep step;
    std::set<std::size_t> busy;
    for (std::size_t k : g.plaquettes) {
      const Plaquette& p = lattice.plaquettes()[k];
      step.members.push_back(SubsystemDrive{MemberKind::kPlaquette, k,
                                            {p.chain.begin(), p.chain.end()}, *pd, pu});
      busy.insert(p.chain.begin(), p.chain.end());
    }
    for (std::size_t k : g.boundary_terms) {
      const BoundaryTerm& b = lattice.boundary_terms()[k];
      step.members.push_back(
          SubsystemDrive{MemberKind::kBoundary, k, {b.x_site, b.z_site}, *bd, bu});
      busy.insert({b.x_site, b.z_site});
    }
    if (fd) {
      for (std::size_t s = 0; s < static_cast<std::size_t>(seq.n_sites); ++s) {
        if (busy.count(s) == 0) {
          step.members.push_back(SubsystemDrive{MemberKind::kField, s, {s}, *fd, fu});
        }
      }
    }
    seq.substeps.push_back(std::move(step));
  }
  validate_sequence(seq);
  return seq;
}

void append_substep(TrotterSequence& seq, Substep substep, int n_steps) {
  for (SubsystemDrive& m : substep.members) {
    if (m.unitary.size() == 0) m.unitary = member_unitary(m.drive, n_steps);
  }
  seq.substeps.push_back(std::move(substep));
  validate_sequence(seq);
}

void validate_sequence(const TrotterSequence& seq) {
  for (std::size_t k = 0; k < seq.substeps.size(); ++k) {
    std::set<std::size_t> seen;
    for (const SubsystemDrive& m : seq.substeps[k].members) {
      const Eigen::Index dim = Eigen::Index{1} << m.sites.size();
      if (m.unitary.rows() != dim || m.unitary.cols() != dim ||
          static_cast<int>(m.sites.size()) != m.drive.n_sites) {
        throw Error(ErrorCode::kInvalidSpec, "member size mismatch in substep " + std::to_string(k));
      }
      for (std::size_t s : m.sites) {
        if (s >= static_cast<std::size_t>(seq.n_sites) || !seen.insert(s).second) {
          throw Error(ErrorCode::kInvalidSpec,
                      "overlapping or out-of-range site in substep " + std::to_string(k));
        }
      }
    }
  }
}

void apply_period(StateVector& state, const TrotterSequence& seq) {
  if (state.n_sites() != seq.n_sites) {
    throw Error(ErrorCode::kInvalidArgument, "state size does not match the sequence");
  }
  for (const Substep& step : seq.substeps) {
    for (const SubsystemDrive& m : step.members) apply_gate(state, m.sites, m.unitary);
  }
}

Eigen::MatrixXcd period_unitary(const TrotterSequence& seq) {
  if (seq.n_sites > kDenseSequenceLimit) {
    throw Error(ErrorCode::kTooLarge, "dense period unitary limited to 12 sites");
  }
  const std::size_t dim = std::size_t{1} << seq.n_sites;
  Eigen::MatrixXcd u(dim, dim);
  parallel_for(dim, [&](std::size_t c) {
    StateVector s = StateVector::basis_state(seq.n_sites, c);
    apply_period(s, seq);
    u.col(static_cast<Eigen::Index>(c)) = s.amplitudes();
  });
  return u;
}

PauliSum substep_hamiltonian(const Substep& substep) {
  std::vector<PauliSum> parts(substep.members.size());
  parallel_for(parts.size(), [&](std::size_t k) {
    const SubsystemDrive& m = substep.members[k];
    const int n = static_cast<int>(m.sites.size());
    parts[k] = from_dense(effective_hamiltonian(m.unitary, kDrivePeriod), n, 1e-14)
                   .relabeled(m.sites);
  });
  PauliSum h;
  for (const PauliSum& p : parts) h += p;
  return h;
}

EffectiveHamiltonianReport effective_hamiltonian_symbolic(const TrotterSequence& seq,
                                                          const PauliSum& target, int order,
                                                          double threshold) {
  const Complex minus_i_tau(0.0, -kDrivePeriod);
  std::optional<PauliSum> z;
  for (const Substep& step : seq.substeps) {
    const PauliSum a = substep_hamiltonian(step) * minus_i_tau;
    if (a.empty()) continue;
    // U(T) = e^{A_K} ... e^{A_1}, so each new substep multiplies from the left.
    z = z ? bch_log_product(a, *z, order, threshold) : a;
  }
  EffectiveHamiltonianReport report;
  report.period = seq.period();
  // Normalised per drive period tau, so a term driven in one substep of a
  // perfect sequence carries its full coupling.
  if (z) report.hamiltonian = (*z) * Complex(0.0, 1.0 / kDrivePeriod);
  refresh_report(report, target);
  return report;
}

void refresh_report(EffectiveHamiltonianReport& report, const PauliSum& target) {
  report.target_overlap.clear();
  PauliSum residual = report.hamiltonian;
  for (const auto& [s, c] : target.sorted_terms()) {
    report.target_overlap.push_back(
        TargetComparison{s, c.real(), report.hamiltonian.coefficient(s).real()});
    residual.add(s, -residual.coefficient(s));
  }
  residual.prune(std::numeric_limits<double>::min());
  report.leading_error = largest(residual);
  report.weight_maxima = maxima_by_weight(report.hamiltonian);
}

ErrorSummary error_report(const EffectiveHamiltonianReport& report, const PauliSum& target,
                          std::size_t long_weight) {
  ErrorSummary out;
  out.residual = report.hamiltonian;
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& [s, c] : target.sorted_terms()) {
    const Complex actual = report.hamiltonian.coefficient(s);
    out.target_part.add(s, actual);
    out.residual.add(s, -actual);
    if (std::abs(c) > 0.0) {
      out.max_relative_deviation =
          std::max(out.max_relative_deviation, std::abs(actual - c) / std::abs(c));
      smallest = std::min(smallest, std::abs(actual));
    }
  }
  out.residual.prune(std::numeric_limits<double>::min());
  out.residual_max = largest(out.residual);
  out.residual_ratio = std::isfinite(smallest) && smallest > 0.0
                           ? out.residual_max.magnitude / smallest
                           : 0.0;
  out.residual_weight_maxima = maxima_by_weight(out.residual);
  for (const auto& [w, e] : out.residual_weight_maxima) {
    if (w >= long_weight && e.magnitude > out.long_string_max.magnitude) out.long_string_max = e;
  }
  return out;
}

}  // namespace floquet_toric
