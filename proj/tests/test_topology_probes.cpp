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

#include "floquet_toric/topology_probes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numbers>
#include <random>

#include "floquet_toric/errors.hpp"
#include "floquet_toric/ground_state.hpp"

namespace floquet_toric {
namespace {

constexpr double kLog2 = std::numbers::ln2;

Lattice bulk() {
  LatticeSpec spec;
  spec.rows = 4;
  spec.cols = 5;
  return build_lattice(spec);
}

// Symplectic GF(2) vectors: bits [0, n) are X parts, [n, 2n) Z parts.
using Symplectic = std::bitset<64>;

Symplectic symplectic(const PauliString& p, int n) {
  Symplectic v;
  for (const auto& [s, l] : p.letters()) {
    if (l == Pauli::X || l == Pauli::Y) v.set(s);
    if (l == Pauli::Z || l == Pauli::Y) v.set(s + static_cast<std::size_t>(n));
  }
  return v;
}

bool anticommute(const Symplectic& a, const Symplectic& b, int n) {
  int c = 0;
  for (int k = 0; k < n; ++k) c += (a[k] && b[k + n]) + (a[k + n] && b[k]);
  return c % 2 == 1;
}

int gf2_rank(std::vector<Symplectic> rows) {
  int rank = 0;
  for (std::size_t col = 0; col < 64 && rank < static_cast<int>(rows.size()); ++col) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const Symplectic& r) { return r[col]; });
    if (pivot == rows.end()) continue;
    std::swap(*pivot, rows[rank]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (static_cast<int>(k) != rank && rows[k][col]) rows[k] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

// Stabilizer generators of the oracle state: the even plaquettes plus every
// product of initial single-site stabilizers that commutes with all of them.
std::vector<Symplectic> oracle_generators(const Lattice& lat) {
  const int n = lat.n_sites();
  std::vector<Symplectic> even, initial;
  for (const Plaquette& p : lat.plaquettes()) {
    if (p.parity == Parity::kEven) even.push_back(symplectic(p.op(), n));
  }
  for (int k = 0; k < n; ++k) {
    const Pauli l = lat.site(static_cast<std::size_t>(k)).is_even() ? Pauli::Z : Pauli::X;
    initial.push_back(symplectic(PauliString::single(static_cast<std::size_t>(k), l), n));
  }
  // Null space of the anticommutation matrix, by brute-force elimination on
  // augmented rows [syndrome | combination].
  const std::size_t m = even.size();
  std::vector<std::pair<std::vector<bool>, std::vector<bool>>> rows;
  for (int k = 0; k < n; ++k) {
    std::vector<bool> syn(m), comb(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < m; ++e) syn[e] = anticommute(initial[k], even[e], n);
    comb[static_cast<std::size_t>(k)] = true;
    rows.emplace_back(syn, comb);
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && !rows[piv].first[col]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || !rows[k].first[col]) continue;
      for (std::size_t c = 0; c < m; ++c) rows[k].first[c] = rows[k].first[c] != rows[r].first[c];
      for (std::size_t c = 0; c < rows[k].second.size(); ++c) {
        rows[k].second[c] = rows[k].second[c] != rows[r].second[c];
      }
    }
    ++r;
  }
  std::vector<Symplectic> gens = even;
  for (std::size_t k = r; k < rows.size(); ++k) {
    Symplectic g;
    for (int s = 0; s < n; ++s) {
      if (rows[k].second[static_cast<std::size_t>(s)]) g ^= initial[s];
    }
    gens.push_back(g);
  }
  return gens;
}

// Stabilizer-state entropy: rank of the generators restricted to the region
// minus its size, in units of log 2.
double oracle_entropy(const std::vector<Symplectic>& gens, const Region& region, int n) {
  std::vector<Symplectic> restricted;
  for (const Symplectic& g : gens) {
    Symplectic v;
    for (std::size_t k = 0; k < region.size(); ++k) {
      v[k] = g[region[k]];
      v[k + region.size()] = g[region[k] + static_cast<std::size_t>(n)];
    }
    restricted.push_back(v);
  }
  return (gf2_rank(restricted) - static_cast<int>(region.size())) * kLog2;
}

StateVector random_product_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
  for (int k = 0; k < n; ++k) {
    Eigen::Vector2cd q(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    q.normalize();
    Eigen::VectorXcd next(amps.size() * 2);
    next << amps * q(0), amps * q(1);
    amps = next;
  }
  return StateVector(n, amps);
}

TEST(ReducedDensityTest, ProductStateIsPure) {
  const StateVector s = random_product_state(6, 1);
  const Region r = {1, 4};
  const Eigen::MatrixXcd rho = reduced_density(s, r);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT((rho * rho - rho).norm(), 1e-12);
  EXPECT_NEAR(entropy(rho), 0.0, 1e-12);
}

TEST(ReducedDensityTest, BellPairHalfIsMaximallyMixed) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  const StateVector s(2, amps);
  const Region r = {1};
  const Eigen::MatrixXcd rho = reduced_density(s, r);
  EXPECT_LT((rho - Eigen::Matrix2cd::Identity() / 2.0).norm(), 1e-14);
  EXPECT_NEAR(entropy(rho), kLog2, 1e-14);
}

TEST(ReducedDensityTest, TraceAndPositivity) {
  const StateVector s = projector_oracle(bulk());
  const Region r = {0, 3, 7, 12, 19};
  const Eigen::MatrixXcd rho = reduced_density(s, r);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
}

TEST(ReducedDensityTest, Limits) {
  const StateVector s(14);
  Region big(13);
  for (std::size_t k = 0; k < 13; ++k) big[k] = k;
  try {
    reduced_density(s, big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  const Region bad = {14};
  EXPECT_THROW(reduced_density(s, bad), Error);
}

TEST(EntropyTest, MaximallyMixed) {
  for (int n = 1; n <= 4; ++n) {
    const Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1 << n, 1 << n) / double(1 << n);
    EXPECT_NEAR(entropy(rho), n * kLog2, 1e-12);
  }
}

TEST(EntropyTest, RelabelingInvariance) {
  const StateVector s = projector_oracle(bulk());
  Region r = {2, 7, 8, 13, 11};
  const double ref = region_entropy(s, r);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 4; ++k) {
    std::shuffle(r.begin(), r.end(), rng);
    EXPECT_NEAR(region_entropy(s, r), ref, 1e-10);
  }
}

TEST(EntropyTest, ComplementOfPureState) {
  const StateVector s = projector_oracle(bulk());
  Region r, rest;
  for (std::size_t k = 0; k < 20; ++k) (k % 3 == 0 ? r : rest).push_back(k);
  EXPECT_NEAR(region_entropy(s, r), region_entropy(s, rest), 1e-10);
}

TEST(TopologicalEntropyTest, ProductStateIsZero) {
  const StateVector s = random_product_state(20, 9);
  for (const std::string& name : partition_preset_names(bulk())) {
    EXPECT_NEAR(topological_entropy(s, preset_partition(bulk(), name)).value, 0.0, 1e-12);
  }
}

TEST(TopologicalEntropyTest, ExactStateMatchesStabilizerOracle) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  const auto gens = oracle_generators(lat);
  ASSERT_EQ(gf2_rank(gens), 20);
  for (const std::string& name : partition_preset_names(lat)) {
    const Partition p = preset_partition(lat, name);
    const TopologicalEntropy t = topological_entropy(s, p);
    const Region ab = [&] { Region r = p.a; r.insert(r.end(), p.b.begin(), p.b.end()); return r; }();
    EXPECT_NEAR(t.terms[0], oracle_entropy(gens, p.a, 20), 1e-10);
    EXPECT_NEAR(t.terms[3], oracle_entropy(gens, ab, 20), 1e-10);
    EXPECT_NEAR(t.value, -kLog2, 1e-10) << name;
    // Subadditivity on every pair.
    EXPECT_LE(t.terms[3], t.terms[0] + t.terms[1] + 1e-10);
    EXPECT_LE(t.terms[4], t.terms[1] + t.terms[2] + 1e-10);
    EXPECT_LE(t.terms[5], t.terms[0] + t.terms[2] + 1e-10);
  }
}

TEST(TopologicalEntropyTest, RandomRegionsMatchOracle) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  const auto gens = oracle_generators(lat);
  std::mt19937_64 rng(11);
  std::vector<std::size_t> all(20);
  for (std::size_t k = 0; k < 20; ++k) all[k] = k;
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    const Region r(all.begin(), all.begin() + 1 + trial % 9);
    EXPECT_NEAR(region_entropy(s, r), oracle_entropy(gens, r, 20), 1e-10);
  }
}

TEST(TopologicalEntropyTest, InvalidPartitions) {
  Partition p{"", {0, 1}, {1, 2}, {3}};
  EXPECT_THROW(validate_partition(p, 20), Error);
  Partition big{"", {0, 1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}};
  try {
    validate_partition(big, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  EXPECT_THROW(preset_partition(bulk(), "nope"), Error);
}

TEST(TopologicalEntropyTest, DevicePartitionOnLogicalGroundState) {
  const Lattice lat = build_lattice(device_spec());
  const Partition p = preset_partition(lat, "device");
  // Product state |-->^9 has none; its projection onto the X_L = -1 code state
  // has -log 2.
  StateVector minus(9, Eigen::VectorXcd::Zero(512));
  for (Eigen::Index b = 0; b < 512; ++b) {
    minus.amplitudes()(b) = (std::popcount(static_cast<unsigned>(b)) % 2 ? -1.0 : 1.0) / std::sqrt(512.0);
  }
  EXPECT_NEAR(topological_entropy(minus, p).value, 0.0, 1e-12);
  StateVector g = minus;
  for (const PauliString& s : stabilizer_terms(lat)) {
    StateVector f = g;
    apply_pauli(f, s);
    g.amplitudes() += f.amplitudes();
  }
  g = apply_sum(g, PauliSum(PauliString{}, 1.0) - logical_operators(lat).x);
  g.normalize();
  EXPECT_NEAR(expectation(g, logical_operators(lat).x), -1.0, 1e-12);
  EXPECT_NEAR(topological_entropy(g, p).value, -kLog2, 1e-10);
}

TEST(EntropyScalingTest, SegmentPresets) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  int n = 2;
  for (const std::string& name : region_preset_names(lat)) {
    const EntropyScaling e = entropy_scaling(s, preset_region(lat, name), lat);
    EXPECT_EQ(e.crossed, n++);
    EXPECT_NEAR(e.measured, e.predicted, 1e-10) << name;
  }
}

TEST(EntropyScalingTest, FullSystemAndSinglePlaquette) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  Region all(20);
  for (std::size_t k = 0; k < 20; ++k) all[k] = k;
  const EntropyScaling full = entropy_scaling(s, all, lat);
  EXPECT_EQ(full.crossed, 0);
  EXPECT_NEAR(full.measured, 0.0, 1e-10);
  EXPECT_EQ(full.predicted, 0.0);
  const Region corner = {lat.index({1, 1})};
  EXPECT_EQ(entropy_scaling(s, corner, lat).crossed, 1);
  EXPECT_EQ(entropy_scaling(s, corner, lat).predicted, 0.0);
}

TEST(BraidingTest, EmptyBraidIsOne) {
  const StateVector s = projector_oracle(bulk());
  EXPECT_NEAR(std::abs(braiding_phase(s, std::vector<AnyonString>{}) - 1.0), 0.0, 1e-14);
}

TEST(BraidingTest, ExactStateSigns) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  for (const std::string& name : braid_preset_names(lat)) {
    const Complex phase = braiding_phase(s, preset_braid(lat, name));
    EXPECT_NEAR(std::abs(phase - Complex(-1.0)), 0.0, 1e-12) << name;
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-10);
  }
}

TEST(BraidingTest, PresetsCreateTheIntendedAnyons) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  const BraidProtocol em = preset_braid(lat, "e-around-m");
  StateVector ref = s;
  for (const AnyonString& a : em.create) apply_string(ref, a);
  std::vector<Site> violated;
  for (const Plaquette& p : lat.plaquettes()) {
    if (expectation_string(ref, p.op()).real() < -0.5) violated.push_back(p.anchor);
  }
  EXPECT_EQ(violated, (std::vector<Site>{{1, 1}, {2, 2}, {3, 2}, {4, 3}}));
  // The loop is the odd plaquette enclosing the m.
  EXPECT_EQ(em.braid[0].op(), lat.plaquettes()[*lat.plaquette_at({3, 2})].op());
}

TEST(BraidingTest, BosonicExchangeOfCharges) {
  // Same T-junction construction with single-letter legs that move an e:
  // the legs commute pairwise, so the exchange sign is +1.
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  const AnyonString t1{"t1", {{lat.index({3, 2}), Pauli::X}}};
  const AnyonString t2{"t2", {{lat.index({3, 3}), Pauli::Z}}};
  const AnyonString t3{"t3", {{lat.index({2, 1}), Pauli::Z}}};
  const BraidProtocol p{"e-exchange", {t1}, {t1, t2, t3, t1, t2, t3}};
  EXPECT_NEAR(std::abs(braiding_phase(s, p) - 1.0), 0.0, 1e-12);
}

TEST(BraidingTest, SectorMismatch) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  const AnyonString extra{"stray", {{lat.index({3, 2}), Pauli::Z}}};
  try {
    braiding_phase(s, std::vector<AnyonString>{extra});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSectorMismatch);
  }
}

TEST(BraidingTest, InvolutionProperty) {
  const Lattice lat = bulk();
  const StateVector s = projector_oracle(lat);
  for (const std::string& name : braid_preset_names(lat)) {
    for (const AnyonString& a : preset_braid(lat, name).braid) {
      StateVector t = s;
      apply_string(t, a);
      apply_string(t, a);
      EXPECT_NEAR(std::abs(t.inner(s)), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace floquet_toric
