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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "floquet_toric/errors.hpp"
#include "floquet_toric/parallel.hpp"

namespace floquet_toric {
namespace {

void check_region(std::span<const std::size_t> region, int n_sites) {
  std::set<std::size_t> seen;
  for (std::size_t s : region) {
    if (s >= static_cast<std::size_t>(n_sites)) {
      throw Error(ErrorCode::kSiteOutOfRange, "region site " + std::to_string(s) + " out of range");
    }
    if (!seen.insert(s).second) {
      throw Error(ErrorCode::kInvalidSpec, "region lists site " + std::to_string(s) + " twice");
    }
  }
}

Region complement(std::span<const std::size_t> region, int n_sites) {
  std::vector<bool> in(static_cast<std::size_t>(n_sites), false);
  for (std::size_t s : region) in[s] = true;
  Region out;
  for (std::size_t s = 0; s < in.size(); ++s) {
    if (!in[s]) out.push_back(s);
  }
  return out;
}

Region join(std::initializer_list<const Region*> parts) {
  Region out;
  for (const Region* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Row index gathers the region bits, column index the rest.
Eigen::MatrixXcd coefficient_matrix(const StateVector& state, std::span<const std::size_t> region) {
  const Region rest = complement(region, state.n_sites());
  const Eigen::Index rows = Eigen::Index{1} << region.size();
  const Eigen::Index cols = Eigen::Index{1} << rest.size();
  Eigen::MatrixXcd m(rows, cols);
  const Eigen::VectorXcd& amps = state.amplitudes();
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < region.size(); ++k) r |= static_cast<Eigen::Index>((b >> region[k]) & 1U) << k;
    Eigen::Index c = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) c |= static_cast<Eigen::Index>((b >> rest[k]) & 1U) << k;
    m(r, c) = amps(static_cast<Eigen::Index>(b));
  }
  return m;
}

Site site_of(const Lattice& lattice, int i, int j) {
  const Site s{i, j};
  if (!lattice.contains(s)) throw Error(ErrorCode::kSiteOutOfRange, "preset site off the lattice");
  return s;
}

bool is_bulk_lattice(const Lattice& lattice) {
  return lattice.spec().boundary == Boundary::kOpen && lattice.rows() == 4 && lattice.cols() == 5;
}

bool is_device(const Lattice& lattice) {
  return lattice.spec().boundary == Boundary::kMixed && lattice.rows() == 3 && lattice.cols() == 3;
}

Region sites(const Lattice& lattice, std::initializer_list<std::pair<int, int>> coords) {
  Region out;
  for (const auto& [i, j] : coords) out.push_back(lattice.index(site_of(lattice, i, j)));
  return out;
}

AnyonString make_string(const Lattice& lattice, std::string name,
                        std::initializer_list<std::tuple<int, int, Pauli>> letters) {
  AnyonString s{std::move(name), {}};
  for (const auto& [i, j, p] : letters) s.letters.emplace_back(lattice.index(site_of(lattice, i, j)), p);
  return s;
}

[[noreturn]] void unknown_preset(std::string_view kind, std::string_view name) {
  throw Error(ErrorCode::kUnsupportedGeometry,
              "no " + std::string(kind) + " preset '" + std::string(name) + "' for this lattice");
}

}  // namespace

void validate_partition(const Partition& p, int n_sites) {
  const Region all = join({&p.a, &p.b, &p.c});
  check_region(all, n_sites);
  if (p.a.empty() || p.b.empty() || p.c.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "partition regions must be non-empty");
  }
  if (all.size() > static_cast<std::size_t>(kReducedDensityLimit)) {
    throw Error(ErrorCode::kTooLarge, "partition union exceeds the reduced-density limit");
  }
}

Eigen::MatrixXcd reduced_density(const StateVector& state, std::span<const std::size_t> region) {
  check_region(region, state.n_sites());
  if (region.size() > static_cast<std::size_t>(kReducedDensityLimit)) {
    throw Error(ErrorCode::kTooLarge, "reduced density limited to 12 sites");
  }
  const Eigen::MatrixXcd m = coefficient_matrix(state, region);
  Eigen::MatrixXcd rho = m * m.adjoint();
  return (rho + rho.adjoint()) / 2.0;
}

double entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double l : eig.eigenvalues()) {
    if (l > 1e-14) s -= l * std::log(l);
  }
  return s;
}

double region_entropy(const StateVector& state, std::span<const std::size_t> region) {
  check_region(region, state.n_sites());
  const Region rest = complement(region, state.n_sites());
  if (rest.size() < region.size()) return entropy(reduced_density(state, rest));
  return entropy(reduced_density(state, region));
}

TopologicalEntropy topological_entropy(const StateVector& state, const Partition& partition) {
  validate_partition(partition, state.n_sites());
  const Partition& p = partition;
  const std::array<Region, 7> regions = {p.a,
                                         p.b,
                                         p.c,
                                         join({&p.a, &p.b}),
                                         join({&p.b, &p.c}),
                                         join({&p.a, &p.c}),
                                         join({&p.a, &p.b, &p.c})};
  TopologicalEntropy out;
  parallel_for(regions.size(), [&](std::size_t k) { out.terms[k] = region_entropy(state, regions[k]); });
  const auto& t = out.terms;
  out.value = t[0] + t[1] + t[2] - t[3] - t[4] - t[5] + t[6];
  return out;
}

EntropyScaling entropy_scaling(const StateVector& state, std::span<const std::size_t> region,
                               const Lattice& lattice) {
  EntropyScaling out;
  out.measured = region_entropy(state, region);
  const std::set<std::size_t> in(region.begin(), region.end());
  for (const Plaquette& p : lattice.plaquettes()) {
    if (p.parity != Parity::kEven) continue;
    const auto inside = std::count_if(p.chain.begin(), p.chain.end(),
                                      [&](std::size_t s) { return in.contains(s); });
    if (inside > 0 && inside < 4) ++out.crossed;
  }
  out.predicted = std::max(out.crossed - 1, 0) * std::numbers::ln2;
  return out;
}

PauliString AnyonString::op() const {
  PauliString out;
  for (const auto& [site, p] : letters) {
    out = multiply_strings(out, PauliString::single(site, p)).second;
  }
  return out;
}

void apply_string(StateVector& state, const AnyonString& s) {
  for (const auto& [site, p] : s.letters) apply_pauli(state, PauliString::single(site, p));
}

Complex braiding_phase(const StateVector& state, const BraidProtocol& protocol) {
  StateVector ref = state;
  for (const AnyonString& s : protocol.create) apply_string(ref, s);
  StateVector braided = ref;
  for (const AnyonString& s : protocol.braid) apply_string(braided, s);
  const Complex overlap = ref.inner(braided) / ref.amplitudes().squaredNorm();
  if (std::abs(overlap) < 0.9) {
    throw Error(ErrorCode::kSectorMismatch, "braid left the quasiparticle sector, |overlap| = " +
                                                std::to_string(std::abs(overlap)));
  }
  return overlap;
}

Complex braiding_phase(const StateVector& state, const std::vector<AnyonString>& strings) {
  return braiding_phase(state, BraidProtocol{"", {}, strings});
}

Partition preset_partition(const Lattice& lattice, std::string_view name) {
  if (is_bulk_lattice(lattice)) {
    if (name == "disk") {
      return Partition{"disk", sites(lattice, {{2, 3}, {3, 3}}),
                       sites(lattice, {{2, 1}, {2, 2}, {3, 1}, {3, 2}}),
                       sites(lattice, {{4, 1}, {4, 2}, {4, 3}})};
    }
    if (name == "edge") {
      return Partition{"edge", sites(lattice, {{2, 4}, {3, 4}, {4, 4}}),
                       sites(lattice, {{1, 1}, {1, 2}, {1, 3}, {1, 4}}),
                       sites(lattice, {{2, 3}, {3, 3}})};
    }
  }
  if (is_device(lattice) && name == "device") {
    return Partition{"device", sites(lattice, {{1, 1}, {1, 2}}), sites(lattice, {{2, 1}, {2, 2}}),
                     sites(lattice, {{3, 1}, {3, 2}})};
  }
  unknown_preset("partition", name);
}

Region preset_region(const Lattice& lattice, std::string_view name) {
  if (is_bulk_lattice(lattice)) {
    if (name == "segment-1") return sites(lattice, {{3, 2}});
    if (name == "segment-2") return sites(lattice, {{2, 2}, {3, 2}});
    if (name == "segment-3") return sites(lattice, {{2, 2}, {3, 2}, {4, 2}});
  }
  unknown_preset("region", name);
}

BraidProtocol preset_braid(const Lattice& lattice, std::string_view name) {
  if (is_bulk_lattice(lattice)) {
    if (name == "e-around-m") {
      // e pair on even plaquettes (1,1),(2,2); m pair on odd (3,2),(4,3). The
      // loop carries the e from (2,2) around (3,2) and back.
      return BraidProtocol{
          "e-around-m",
          {make_string(lattice, "e-pair", {{2, 2, Pauli::Z}}),
           make_string(lattice, "m-pair", {{4, 3, Pauli::Z}})},
          {make_string(lattice, "loop",
                       {{3, 2, Pauli::X}, {4, 2, Pauli::Z}, {4, 3, Pauli::X}, {3, 3, Pauli::Z}})}};
    }
    if (name == "dyon-exchange") {
      // Three legs from a shared junction dyon, applied as
      // t3 t2^ t1 t3^ t2 t1^ (rightmost first).
      const AnyonString t1 = make_string(lattice, "leg-1", {{2, 2, Pauli::Y}});
      const AnyonString t2 = make_string(lattice, "leg-2", {{2, 3, Pauli::Y}});
      const AnyonString t3 = make_string(lattice, "leg-3", {{2, 2, Pauli::X}, {3, 2, Pauli::Y}});
      return BraidProtocol{"dyon-exchange", {t1}, {t1, t2, t3, t1, t2, t3}};
    }
  }
  unknown_preset("braid", name);
}

std::vector<std::string> partition_preset_names(const Lattice& lattice) {
  if (is_bulk_lattice(lattice)) return {"disk", "edge"};
  if (is_device(lattice)) return {"device"};
  return {};
}

std::vector<std::string> region_preset_names(const Lattice& lattice) {
  if (is_bulk_lattice(lattice)) return {"segment-1", "segment-2", "segment-3"};
  return {};
}

std::vector<std::string> braid_preset_names(const Lattice& lattice) {
  if (is_bulk_lattice(lattice)) return {"e-around-m", "dyon-exchange"};
  return {};
}

}  // namespace floquet_toric
