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
 * File formats: JSON documents, CSV tables and binary matrices. Sites are
 * 0-based flat indices in files; lattice coordinates are written as [i, j].
 * Every CSV starts with a "#" units line.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floquet_toric/device.hpp"
#include "floquet_toric/drive_optimizer.hpp"
#include "floquet_toric/ground_state.hpp"
#include "floquet_toric/lattice_model.hpp"
#include "floquet_toric/topology_probes.hpp"
#include "floquet_toric/trotter_engine.hpp"

namespace floquet_toric {

using Json = nlohmann::ordered_json;

inline constexpr const char* kUnitsLine = "# energies in units of omega, times in units of tau";

/// [{"string": "X1.Z2", "re": c.real, "im": c.imag}, ...] in canonical order.
Json to_json(const PauliSum& a);
PauliSum pauli_sum_from_json(const Json& j);

/// {"rows", "cols", "boundary": "open"|"mixed", optional "extra_links":
/// [[[i,j],[i,j]], ...], optional "boundary_terms": [{"x": [i,j], "z": [i,j]}]}.
/// Throws kInvalidSpec on malformed input.
LatticeSpec lattice_spec_from_json(const Json& j);
Json to_json(const LatticeSpec& spec);

/// Sites, links, plaquettes, boundary terms and Trotter groups.
Json geometry_json(const Lattice& lattice);

/// One optional entry per drive family, each with its named parameters and
/// the J tau it was synthesised for.
struct DriveParamSet {
  std::optional<PlaquetteDriveParams> plaquette;
  double plaquette_jtau = 0.0;
  std::optional<BoundaryDriveParams> boundary;
  double boundary_jtau = 0.0;
  std::optional<ThreeSpinDriveParams> three_spin;
  double three_spin_jtau = 0.0;
};

Json to_json(const DriveParamSet& p);
DriveParamSet drive_params_from_json(const Json& j);

Json to_json(const OptimizationReport& r);

Json to_json(const std::vector<PrepGate>& gates);
std::vector<PrepGate> prep_gates_from_json(const Json& j);
Json to_json(const PrepDiagnostics& d);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);
Json to_json(const AnyonString& s);
AnyonString anyon_string_from_json(const Json& j);
Json to_json(const BraidProtocol& b);
BraidProtocol braid_from_json(const Json& j);

/// Drives and member layout; unitaries are rebuilt on load.
Json to_json(const DriveSpec& d);
DriveSpec drive_spec_from_json(const Json& j);
Json to_json(const TrotterSequence& seq);
TrotterSequence sequence_from_json(const Json& j, int n_steps = 0);

Json to_json(const EffectiveHamiltonianReport& r);

/// Reads and parses a JSON file; throws kIo.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// <base>.bin holds rows*cols complex doubles (re, im interleaved, row-major,
/// little-endian); <base>.json holds {"rows", "cols", "dtype", "order"} plus
/// the given metadata.
void write_matrix(const std::filesystem::path& base, const Eigen::MatrixXcd& m,
                  const Json& metadata = Json::object());
Eigen::MatrixXcd read_matrix(const std::filesystem::path& base);

/// CSV tables. Each returns the full text including the units line.
std::string robustness_csv(const RobustnessResult& r);
std::string pauli_sum_csv(const PauliSum& a);
std::string topological_entropy_csv(const std::vector<std::pair<std::string, TopologicalEntropy>>& rows);
std::string entropy_scaling_csv(const std::vector<std::pair<std::string, EntropyScaling>>& rows);
std::string trajectory_csv(const std::vector<AdiabaticSample>& trajectory);
struct SpectrumRow {
  double field = 0.0;
  std::vector<double> quasienergies;
};
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace floquet_toric
