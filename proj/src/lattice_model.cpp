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

#include "floquet_toric/lattice_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

std::string describe(Site s) {
  return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
}

int chebyshev(Site a, Site b) {
  return std::max(std::abs(a.i - b.i), std::abs(a.j - b.j));
}

bool on_boundary(Site s, int rows, int cols) {
  return s.i == 1 || s.i == cols || s.j == 1 || s.j == rows;
}

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

PauliString Plaquette::op() const {
  return PauliString{{chain[0], Pauli::X},
                     {chain[1], Pauli::Z},
                     {chain[2], Pauli::Z},
                     {chain[3], Pauli::X}};
}

PauliString BoundaryTerm::op() const {
  return PauliString{{x_site, Pauli::X}, {z_site, Pauli::Z}};
}

std::size_t Lattice::index(Site s) const {
  if (!contains(s)) {
    throw Error(ErrorCode::kSiteOutOfRange, "site " + describe(s) + " outside lattice");
  }
  return static_cast<std::size_t>((s.j - 1) * spec_.cols + (s.i - 1));
}

Site Lattice::site(std::size_t index) const {
  if (index >= static_cast<std::size_t>(n_sites())) {
    throw Error(ErrorCode::kSiteOutOfRange, "site index out of range");
  }
  const int k = static_cast<int>(index);
  return Site{k % spec_.cols + 1, k / spec_.cols + 1};
}

bool Lattice::contains(Site s) const {
  return s.i >= 1 && s.i <= spec_.cols && s.j >= 1 && s.j <= spec_.rows;
}

std::optional<std::size_t> Lattice::plaquette_at(Site anchor) const {
  for (std::size_t k = 0; k < plaquettes_.size(); ++k) {
    if (plaquettes_[k].anchor == anchor) return k;
  }
  return std::nullopt;
}

std::vector<BoundaryTermSpec> default_boundary_terms(int rows, int cols) {
  std::vector<BoundaryTermSpec> out;
  // Bottom edge: outside plaquette (i, 0) truncates to Z(i,1) X(i+1,1).
  for (int i = 1; i < cols; ++i) {
    if (i % 2 == 0) out.push_back({Site{i + 1, 1}, Site{i, 1}});
  }
  // Top edge: outside plaquette (i, rows) truncates to X(i,rows) Z(i+1,rows).
  for (int i = 1; i < cols; ++i) {
    if ((i + rows) % 2 == 0) out.push_back({Site{i, rows}, Site{i + 1, rows}});
  }
  // Left edge: outside plaquette (0, j) truncates to Z(1,j) X(1,j+1).
  for (int j = 1; j < rows; ++j) {
    if (j % 2 == 1) out.push_back({Site{1, j + 1}, Site{1, j}});
  }
  // Right edge: outside plaquette (cols, j) truncates to X(cols,j) Z(cols,j+1).
  for (int j = 1; j < rows; ++j) {
    if ((cols + j) % 2 == 1) out.push_back({Site{cols, j}, Site{cols, j + 1}});
  }
  return out;
}

Lattice build_lattice(const LatticeSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) {
    throw Error(ErrorCode::kInvalidSpec, "lattice needs at least 2 rows and 2 cols");
  }
  if (spec.n_sites() > kLatticeSiteLimit) {
    throw Error(ErrorCode::kInvalidSpec,
                "lattice exceeds " + std::to_string(kLatticeSiteLimit) + " sites");
  }
  Lattice lat;
  lat.spec_ = spec;

  std::set<std::pair<std::size_t, std::size_t>> links;
  for (int j = 1; j <= spec.rows; ++j) {
    for (int i = 1; i <= spec.cols; ++i) {
      const std::size_t here = lat.index({i, j});
      if (i < spec.cols) links.insert(ordered(here, lat.index({i + 1, j})));
      if (j < spec.rows) links.insert(ordered(here, lat.index({i, j + 1})));
    }
  }
  if (spec.extra_links.empty()) {
    for (int j = 1; j < spec.rows; ++j) {
      for (int i = 1; i < spec.cols; ++i) {
        links.insert(ordered(lat.index({i, j + 1}), lat.index({i + 1, j})));
      }
    }
  } else {
    for (const auto& [a, b] : spec.extra_links) {
      if (!lat.contains(a) || !lat.contains(b) || a == b || chebyshev(a, b) > 1) {
        throw Error(ErrorCode::kInvalidSpec,
                    "invalid extra link " + describe(a) + "-" + describe(b));
      }
      links.insert(ordered(lat.index(a), lat.index(b)));
    }
  }
  lat.links_.assign(links.begin(), links.end());

  for (int j = 1; j < spec.rows; ++j) {
    for (int i = 1; i < spec.cols; ++i) {
      Plaquette p;
      p.anchor = Site{i, j};
      p.parity = p.anchor.is_even() ? Parity::kEven : Parity::kOdd;
      p.chain = {lat.index({i, j}), lat.index({i, j + 1}), lat.index({i + 1, j}),
                 lat.index({i + 1, j + 1})};
      for (std::size_t k = 0; k + 1 < p.chain.size(); ++k) {
        if (!links.count(ordered(p.chain[k], p.chain[k + 1]))) {
          throw Error(ErrorCode::kInvalidSpec,
                      "plaquette " + describe(p.anchor) + " misses a drive link");
        }
      }
      lat.plaquettes_.push_back(p);
    }
  }

  if (spec.boundary == Boundary::kMixed) {
    const std::vector<BoundaryTermSpec> terms =
        spec.boundary_terms ? *spec.boundary_terms
                            : default_boundary_terms(spec.rows, spec.cols);
    for (const auto& t : terms) {
      if (!lat.contains(t.x_site) || !lat.contains(t.z_site) || t.x_site == t.z_site ||
          !on_boundary(t.x_site, spec.rows, spec.cols) ||
          !on_boundary(t.z_site, spec.rows, spec.cols)) {
        throw Error(ErrorCode::kInvalidSpec, "invalid boundary term " +
                                                 describe(t.x_site) + "-" +
                                                 describe(t.z_site));
      }
      const BoundaryTerm b{lat.index(t.x_site), lat.index(t.z_site)};
      if (!links.count(ordered(b.x_site, b.z_site))) {
        throw Error(ErrorCode::kInvalidSpec, "boundary term sites are not linked");
      }
      lat.boundary_.push_back(b);
    }
  } else if (spec.boundary_terms && !spec.boundary_terms->empty()) {
    throw Error(ErrorCode::kInvalidSpec, "open lattices carry no boundary terms");
  }

  const std::vector<PauliString> terms = stabilizer_terms(lat);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (terms[a] == terms[b] || !terms[a].commutes_with(terms[b])) {
        throw Error(ErrorCode::kInvalidSpec, "terms " + terms[a].to_string() +
                                                 " and " + terms[b].to_string() +
                                                 " do not form a stabilizer set");
      }
    }
  }
  return lat;
}

TrotterGroups partition_groups(const Lattice& lattice) {
  TrotterGroups out;
  out.groups.resize(kTrotterColors);
  std::vector<std::set<std::size_t>> used(kTrotterColors);
  auto place = [&](std::span<const std::size_t> sites) -> std::size_t {
    for (std::size_t c = 0; c < used.size(); ++c) {
      const bool free = std::none_of(sites.begin(), sites.end(), [&](std::size_t s) {
        return used[c].count(s) > 0;
      });
      if (free) {
        used[c].insert(sites.begin(), sites.end());
        return c;
      }
    }
    throw Error(ErrorCode::kPartitionImpossible, "four groups are not enough");
  };
  // Plaquettes are stored row-major by anchor, which fixes the tie-breaking.
  for (std::size_t k = 0; k < lattice.plaquettes().size(); ++k) {
    const auto& chain = lattice.plaquettes()[k].chain;
    out.groups[place(chain)].plaquettes.push_back(k);
  }
  for (std::size_t k = 0; k < lattice.boundary_terms().size(); ++k) {
    const auto& b = lattice.boundary_terms()[k];
    const std::array<std::size_t, 2> sites{b.x_site, b.z_site};
    out.groups[place(sites)].boundary_terms.push_back(k);
  }
  return out;
}

std::vector<PauliString> stabilizer_terms(const Lattice& lattice) {
  std::vector<PauliString> out;
  for (const auto& p : lattice.plaquettes()) out.push_back(p.op());
  for (const auto& b : lattice.boundary_terms()) out.push_back(b.op());
  return out;
}

PauliSum target_hamiltonian(const Lattice& lattice, double coupling) {
  PauliSum h;
  for (const auto& s : stabilizer_terms(lattice)) h.add(s, -coupling);
  return h;
}

std::size_t stabilizer_rank(const std::vector<PauliString>& strings) {
  constexpr std::size_t kW = PauliString::kWords;
  using Row = std::array<std::uint64_t, 2 * kW>;
  std::vector<Row> rows;
  rows.reserve(strings.size());
  for (const auto& s : strings) {
    Row r{};
    for (std::size_t w = 0; w < kW; ++w) {
      r[w] = s.x_bits()[w];
      r[kW + w] = s.z_bits()[w];
    }
    rows.push_back(r);
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < 2 * kW * 64 && rank < rows.size(); ++bit) {
    const std::size_t w = bit / 64;
    const std::uint64_t m = std::uint64_t{1} << (bit % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & m)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][w] & m)) {
        for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

LatticeSpec device_spec() {
  LatticeSpec spec;
  spec.rows = 3;
  spec.cols = 3;
  spec.boundary = Boundary::kMixed;
  return spec;
}

LogicalOperators logical_operators(const Lattice& lattice) {
  if (lattice.rows() != 3 || lattice.cols() != 3 ||
      lattice.spec().boundary != Boundary::kMixed) {
    throw Error(ErrorCode::kUnsupportedGeometry,
                "logical operators are defined for the 3x3 mixed device only");
  }
  const auto at = [&](int i, int j) { return lattice.index({i, j}); };
  const PauliString x{{at(1, 2), Pauli::X}, {at(2, 2), Pauli::Z}, {at(3, 2), Pauli::X}};
  const PauliString z{{at(2, 1), Pauli::Z}, {at(2, 2), Pauli::X}, {at(2, 3), Pauli::Z}};
  for (const auto& s : stabilizer_terms(lattice)) {
    if (!s.commutes_with(x) || !s.commutes_with(z)) {
      throw Error(ErrorCode::kUnsupportedGeometry,
                  "boundary placement incompatible with the logical operators");
    }
  }
  return LogicalOperators{PauliSum(x, 1.0), PauliSum(z, 1.0)};
}

}  // namespace floquet_toric
