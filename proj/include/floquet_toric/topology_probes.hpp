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
 * Entanglement entropies and anyon string operations on statevectors.
 * Entropies use the natural logarithm.
 */

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floquet_toric/lattice_model.hpp"
#include "floquet_toric/propagation.hpp"

namespace floquet_toric {

using Region = std::vector<std::size_t>;

inline constexpr int kReducedDensityLimit = 12;

struct Partition {
  std::string name;
  Region a;
  Region b;
  Region c;
};

/// Throws kInvalidSpec for overlapping regions or sites outside [0, n_sites),
/// kTooLarge when A u B u C exceeds kReducedDensityLimit.
void validate_partition(const Partition& p, int n_sites);

/// Partial trace over the complement of region. Throws kTooLarge past
/// kReducedDensityLimit sites and kSiteOutOfRange for bad indices.
Eigen::MatrixXcd reduced_density(const StateVector& state, std::span<const std::size_t> region);

/// -sum lambda log lambda over eigenvalues above 1e-14.
double entropy(const Eigen::MatrixXcd& rho);

/// Entropy of a region of a pure state, traced on whichever side is smaller.
double region_entropy(const StateVector& state, std::span<const std::size_t> region);

struct TopologicalEntropy {
  /// S_A, S_B, S_C, S_AB, S_BC, S_AC, S_ABC.
  std::array<double, 7> terms{};
  double value = 0.0;
};

inline constexpr std::array<std::string_view, 7> kEntropyTermNames = {"A",  "B",  "C",  "AB",
                                                                        "BC", "AC", "ABC"};

/// S_A + S_B + S_C - S_AB - S_BC - S_AC + S_ABC.
TopologicalEntropy topological_entropy(const StateVector& state, const Partition& partition);

struct EntropyScaling {
  double measured = 0.0;
  double predicted = 0.0;
  /// Even plaquettes with sites both inside and outside the region.
  int crossed = 0;
};

/// Predicted value is max(n - 1, 0) log 2 for n crossed even plaquettes.
EntropyScaling entropy_scaling(const StateVector& state, std::span<const std::size_t> region,
                               const Lattice& lattice);

struct AnyonString {
  std::string name;
  std::vector<std::pair<std::size_t, Pauli>> letters;

  /// Support and letters of the product, phase dropped.
  PauliString op() const;
};

/// Applies the letters one at a time, first letter first.
void apply_string(StateVector& state, const AnyonString& s);

/// Strings applied in order: create fixes the quasiparticle content of the
/// reference, braid is applied on top of it.
struct BraidProtocol {
  std::string name;
  std::vector<AnyonString> create;
  std::vector<AnyonString> braid;
};

/// <ref|braided> with ref = create|state>. Throws kSectorMismatch when the
/// overlap magnitude is below 0.9.
Complex braiding_phase(const StateVector& state, const BraidProtocol& protocol);

/// Braid strings applied directly to the state, which is its own reference.
Complex braiding_phase(const StateVector& state, const std::vector<AnyonString>& strings);

/// Named presets. 4x5 open lattice: partitions "disk", "edge"; scaling
/// regions "segment-1", "segment-2", "segment-3"; braids "e-around-m",
/// "dyon-exchange". 3x3 device: partition "device". Throws
/// kUnsupportedGeometry for unknown lattice/name pairs.
Partition preset_partition(const Lattice& lattice, std::string_view name);
Region preset_region(const Lattice& lattice, std::string_view name);
BraidProtocol preset_braid(const Lattice& lattice, std::string_view name);

std::vector<std::string> partition_preset_names(const Lattice& lattice);
std::vector<std::string> region_preset_names(const Lattice& lattice);
std::vector<std::string> braid_preset_names(const Lattice& lattice);

}  // namespace floquet_toric
