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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "floquet_toric/errors.hpp"
#include "test_support.hpp"

namespace floquet_toric {
namespace {

constexpr double kJ = 1.0 / 16.0;  // J tau = pi / 8

// A previously synthesised pi/8 drive pair, rounded to six decimals.
PlaquetteDriveParams plaquette_params() {
  const double x[8] = {12.992337, 10.989939, -0.259826, -0.000418,
                       -0.466758, -0.508721, -1.885955, -0.013470};
  return PlaquetteDriveParams::from_array(std::span<const double>(x, 8));
}
BoundaryDriveParams boundary_params() { return {-0.212315, 1.545409}; }

Lattice lattice(int rows, int cols, Boundary b) {
  LatticeSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.boundary = b;
  return build_lattice(spec);
}

// Embeds a local operator by permuting basis bits, independent of apply_gate.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& local, const std::vector<std::size_t>& sites,
                       int n) {
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  std::size_t mask = 0;
  for (std::size_t s : sites) mask |= std::size_t{1} << s;
  auto local_index = [&](std::size_t b) {
    std::size_t l = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) l |= ((b >> sites[k]) & 1U) << k;
    return l;
  };
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = local(local_index(r), local_index(c));
    }
  }
  return out;
}

TEST(BuildSequenceTest, SinglePlaquetteHasOneActiveSubstep) {
  const auto seq = build_sequence(lattice(2, 2, Boundary::kOpen), plaquette_params(), {});
  ASSERT_EQ(seq.substeps.size(), 4u);
  EXPECT_EQ(seq.substeps[0].members.size(), 1u);
  for (int k = 1; k < 4; ++k) EXPECT_TRUE(seq.substeps[k].members.empty());
  EXPECT_DOUBLE_EQ(seq.period(), 4 * kDrivePeriod);
}

TEST(BuildSequenceTest, FiveByFiveCoversEverything) {
  const Lattice lat = lattice(5, 5, Boundary::kMixed);
  const auto seq = build_sequence(lat, plaquette_params(), boundary_params());
  ASSERT_EQ(seq.substeps.size(), 4u);
  std::set<std::size_t> plaquettes, boundary;
  for (const Substep& s : seq.substeps) {
    std::set<std::size_t> used;
    for (const SubsystemDrive& m : s.members) {
      for (std::size_t site : m.sites) EXPECT_TRUE(used.insert(site).second);
      if (m.kind == MemberKind::kPlaquette) plaquettes.insert(m.index);
      if (m.kind == MemberKind::kBoundary) boundary.insert(m.index);
    }
  }
  EXPECT_EQ(plaquettes.size(), 16u);
  EXPECT_EQ(boundary.size(), lat.boundary_terms().size());
}

TEST(BuildSequenceTest, MissingParams) {
  try {
    build_sequence(lattice(3, 3, Boundary::kMixed), plaquette_params(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingParams);
  }
  EXPECT_THROW(build_sequence(lattice(2, 2, Boundary::kOpen), {}, {}), Error);
}

TEST(BuildSequenceTest, OverlapRejected) {
  auto seq = build_sequence(lattice(2, 2, Boundary::kOpen), plaquette_params(), {});
  seq.substeps[0].members.push_back(seq.substeps[0].members.front());
  EXPECT_THROW(validate_sequence(seq), Error);
}

TEST(BuildSequenceTest, FieldCoversIdleSites) {
  SequenceOptions opt;
  opt.field = 0.05;
  const auto seq = build_sequence(lattice(3, 3, Boundary::kMixed), plaquette_params(),
                                  boundary_params(), opt);
  for (const Substep& s : seq.substeps) {
    std::size_t covered = 0;
    for (const SubsystemDrive& m : s.members) covered += m.sites.size();
    EXPECT_EQ(covered, 9u);
  }
}

TEST(ApplyPeriodTest, ZeroDriveIsIdentity) {
  const auto seq = build_sequence(lattice(3, 3, Boundary::kMixed), PlaquetteDriveParams{},
                                  BoundaryDriveParams{});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::VectorXcd amps(512);
  for (auto& a : amps) a = {g(rng), g(rng)};
  StateVector s(9, amps);
  s.normalize();
  const StateVector before = s;
  apply_period(s, seq);
  EXPECT_GT(fidelity(s, before), 1.0 - 1e-12);
}

TEST(ApplyPeriodTest, TwoByTwoMatchesDensePropagator) {
  const Lattice lat = lattice(2, 2, Boundary::kOpen);
  const auto seq = build_sequence(lat, plaquette_params(), {});
  const Eigen::MatrixXcd local = propagator(plaquette_drive(plaquette_params()), kDrivePeriod).unitary;
  const auto& chain = lat.plaquettes()[0].chain;
  const Eigen::MatrixXcd ref = embed(local, {chain.begin(), chain.end()}, 4);
  EXPECT_LT((period_unitary(seq) - ref).norm(), 1e-10);
}

TEST(ApplyPeriodTest, GroundStateReturnsToItself) {
  const Lattice lat = lattice(3, 3, Boundary::kMixed);
  const auto seq = build_sequence(lat, plaquette_params(), boundary_params());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      testing::kron_sum(target_hamiltonian(lat, kJ), 9));
  StateVector s(9, eig.eigenvectors().col(0));
  const StateVector before = s;
  apply_period(s, seq);
  EXPECT_GT(fidelity(s, before), 1.0 - 1e-4);
}

TEST(SymbolicTest, TwoByTwoEqualsDenseExtraction) {
  const Lattice lat = lattice(2, 2, Boundary::kOpen);
  const auto seq = build_sequence(lat, plaquette_params(), {});
  const auto report = effective_hamiltonian_symbolic(seq, target_hamiltonian(lat, kJ));
  const auto& chain = lat.plaquettes()[0].chain;
  const Eigen::MatrixXcd local = propagator(plaquette_drive(plaquette_params()), kDrivePeriod).unitary;
  const Eigen::MatrixXcd h = embed(effective_hamiltonian(local, kDrivePeriod), {chain.begin(), chain.end()}, 4);
  PauliSum diff = report.hamiltonian - from_dense(h, 4);
  EXPECT_LT(diff.max_abs(), 1e-10);
  EXPECT_EQ(report.weight_maxima.at(4).string, lat.plaquettes()[0].op());
}

TEST(SymbolicTest, DisjointSubstepsHaveNoCrossTerms) {
  const DriveSpec d = plaquette_drive(plaquette_params());
  const Eigen::MatrixXcd u = propagator(d, kDrivePeriod).unitary;
  TrotterSequence seq;
  seq.n_sites = 8;
  seq.substeps.push_back(Substep{{SubsystemDrive{MemberKind::kCustom, 0, {0, 1, 2, 3}, d, u}}});
  seq.substeps.push_back(Substep{{SubsystemDrive{MemberKind::kCustom, 1, {4, 5, 6, 7}, d, u}}});
  const auto report = effective_hamiltonian_symbolic(seq, PauliSum{});
  PauliSum expected = substep_hamiltonian(seq.substeps[0]);
  expected += substep_hamiltonian(seq.substeps[1]);
  PauliSum diff = report.hamiltonian - expected;
  EXPECT_LT(diff.prune(1e-12).max_abs(), 1e-9);
}

TEST(SymbolicTest, SubstepGeneratorIsSumOfMembers) {
  const Lattice lat = lattice(3, 3, Boundary::kMixed);
  const auto seq = build_sequence(lat, plaquette_params(), boundary_params());
  for (const Substep& s : seq.substeps) {
    if (s.members.size() < 2) continue;
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(512, 512);
    for (const SubsystemDrive& m : s.members) product = embed(m.unitary, m.sites, 9) * product;
    const Eigen::MatrixXcd ref = exp_hermitian(testing::kron_sum(substep_hamiltonian(s), 9), kDrivePeriod);
    EXPECT_LT((product - ref).norm(), 1e-10);
  }
}

TEST(SymbolicTest, MatchesDenseProductOnThreeByThree) {
  const Lattice lat = lattice(3, 3, Boundary::kMixed);
  const auto seq = build_sequence(lat, plaquette_params(), boundary_params());
  const auto report = effective_hamiltonian_symbolic(seq, target_hamiltonian(lat, kJ));
  for (const auto& [s, c] : report.hamiltonian.terms()) EXPECT_LT(std::abs(c.imag()), 1e-12);
  const Eigen::MatrixXcd from_symbolic =
      exp_hermitian(testing::kron_sum(report.hamiltonian, 9), kDrivePeriod);
  const double dist = phase_aligned_distance(period_unitary(seq), from_symbolic);
  EXPECT_LT(dist, 1e-7);
  const ErrorSummary sum = error_report(report, target_hamiltonian(lat, kJ), 3);
  EXPECT_LT(sum.max_relative_deviation, 1e-3);
}

TEST(SymbolicTest, IdealMembersGiveExactTarget) {
  const Lattice lat = lattice(3, 3, Boundary::kMixed);
  auto seq = build_sequence(lat, plaquette_params(), boundary_params());
  for (Substep& s : seq.substeps) {
    for (SubsystemDrive& m : s.members) {
      const PauliString local = m.kind == MemberKind::kPlaquette ? plaquette_target() : boundary_target();
      m.unitary = rotation_unitary(local, static_cast<int>(m.sites.size()), kJ * kDrivePeriod);
    }
  }
  const PauliSum target = target_hamiltonian(lat, kJ);
  const auto report = effective_hamiltonian_symbolic(seq, target);
  const ErrorSummary sum = error_report(report, target, 3);
  EXPECT_LT(sum.max_relative_deviation, 1e-12);
  EXPECT_LT(sum.residual_max.magnitude, kLatticeBchThreshold);
}

TEST(ErrorReportTest, ExactTargetHasNoResidual) {
  const Lattice lat = lattice(3, 3, Boundary::kMixed);
  EffectiveHamiltonianReport r;
  r.hamiltonian = target_hamiltonian(lat, kJ);
  refresh_report(r, r.hamiltonian);
  const ErrorSummary sum = error_report(r, r.hamiltonian, 3);
  EXPECT_TRUE(sum.residual.empty());
  EXPECT_EQ(sum.residual_ratio, 0.0);
  EXPECT_EQ(sum.max_relative_deviation, 0.0);
  EXPECT_EQ(r.leading_error.magnitude, 0.0);
}

}  // namespace
}  // namespace floquet_toric
