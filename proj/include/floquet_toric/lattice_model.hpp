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
 * Square-lattice geometry for the four-spin plaquette model.
 *
 * Sites carry 1-based coordinates (i, j): i is the column (x), j the row (y),
 * with (1, 1) at the bottom-left. The flat 0-based index is
 * (j - 1) * cols + (i - 1).
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "floquet_toric/pauli_algebra.hpp"

namespace floquet_toric {

struct Site {
  int i = 1;
  int j = 1;
  friend bool operator==(const Site&, const Site&) = default;
  bool is_even() const { return (i + j) % 2 == 0; }
};

enum class Boundary { kOpen, kMixed };

enum class Parity { kEven, kOdd };

/// An X_a Z_b boundary term given by its sites.
struct BoundaryTermSpec {
  Site x_site;
  Site z_site;
};

struct LatticeSpec {
  int rows = 2;
  int cols = 2;
  Boundary boundary = Boundary::kOpen;
  /// Extra (diagonal) links. Empty means every plaquette's m1-m2 diagonal.
  std::vector<std::pair<Site, Site>> extra_links;
  /// Explicit boundary placement for mixed lattices; default when absent.
  std::optional<std::vector<BoundaryTermSpec>> boundary_terms;

  int n_sites() const { return rows * cols; }
};

struct Plaquette {
  Site anchor;
  Parity parity = Parity::kEven;
  /// Flat indices in drive-chain order e1, m1, m2, e2.
  std::array<std::size_t, 4> chain{};

  /// X on e1, e2 and Z on m1, m2.
  PauliString op() const;
};

struct BoundaryTerm {
  std::size_t x_site = 0;
  std::size_t z_site = 0;

  PauliString op() const;
};

class Lattice {
 public:
  const LatticeSpec& spec() const { return spec_; }
  int rows() const { return spec_.rows; }
  int cols() const { return spec_.cols; }
  int n_sites() const { return spec_.n_sites(); }

  std::size_t index(Site s) const;
  Site site(std::size_t index) const;
  bool contains(Site s) const;

  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
  const std::vector<BoundaryTerm>& boundary_terms() const { return boundary_; }

  /// All coupled site pairs: nearest neighbours plus extra links.
  const std::vector<std::pair<std::size_t, std::size_t>>& links() const {
    return links_;
  }

  /// Index into plaquettes() of the plaquette anchored at s, if any.
  std::optional<std::size_t> plaquette_at(Site anchor) const;

  friend Lattice build_lattice(const LatticeSpec& spec);

 private:
  LatticeSpec spec_;
  std::vector<Plaquette> plaquettes_;
  std::vector<BoundaryTerm> boundary_;
  std::vector<std::pair<std::size_t, std::size_t>> links_;
};

inline constexpr int kLatticeSiteLimit = 25;

/// Enumerates plaquettes and, for mixed boundaries, boundary terms. Checks
/// that every emitted term commutes with every other. Throws kInvalidSpec.
Lattice build_lattice(const LatticeSpec& spec);

/// Default mixed placement: truncations of the even plaquettes beyond the
/// bottom and top edges and of the odd ones beyond the left and right edges.
std::vector<BoundaryTermSpec> default_boundary_terms(int rows, int cols);

struct TrotterGroup {
  std::vector<std::size_t> plaquettes;
  std::vector<std::size_t> boundary_terms;

  bool empty() const { return plaquettes.empty() && boundary_terms.empty(); }
};

struct TrotterGroups {
  std::vector<TrotterGroup> groups;
};

inline constexpr int kTrotterColors = 4;

/// Greedy row-major colouring into four site-disjoint groups (plaquettes
/// first, then boundary terms). Throws kPartitionImpossible.
TrotterGroups partition_groups(const Lattice& lattice);

/// -J times the sum of plaquette and boundary operators.
PauliSum target_hamiltonian(const Lattice& lattice, double coupling);

/// All stabilizer terms (plaquettes then boundary terms) as strings.
std::vector<PauliString> stabilizer_terms(const Lattice& lattice);

/// GF(2) rank of a set of Pauli strings (phases ignored).
std::size_t stabilizer_rank(const std::vector<PauliString>& strings);

struct LogicalOperators {
  PauliSum x;
  PauliSum z;
};

/// X_L = X(1,2) Z(2,2) X(3,2) and Z_L = Z(2,1) X(2,2) Z(2,3) on the 3x3
/// device. Throws kUnsupportedGeometry otherwise.
LogicalOperators logical_operators(const Lattice& lattice);

/// The 3x3 mixed-boundary device.
LatticeSpec device_spec();

}  // namespace floquet_toric
