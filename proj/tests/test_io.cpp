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

#include "floquet_toric/io.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() /
           ("ft_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(p);
  return p;
}

TEST(PauliJsonTest, RoundTrip) {
  PauliSum a;
  a.add(PauliString::parse("X1.Z2.Z3.X4"), Complex(-0.25, 0.0));
  a.add(PauliString::parse("Y0"), Complex(1e-7, -2.5));
  const Json j = to_json(a);
  EXPECT_EQ(j[0].size(), 3u);
  EXPECT_EQ((pauli_sum_from_json(j) - a).max_abs(), 0.0);
  EXPECT_THROW(pauli_sum_from_json(Json::parse(R"([{"re": 1}])")), Error);
}

TEST(LatticeJsonTest, RoundTripAndErrors) {
  const Json j = Json::parse(R"({"rows": 3, "cols": 3, "boundary": "mixed",
      "boundary_terms": [{"x": [3, 1], "z": [2, 1]}]})");
  const LatticeSpec spec = lattice_spec_from_json(j);
  EXPECT_EQ(spec.boundary, Boundary::kMixed);
  ASSERT_TRUE(spec.boundary_terms);
  EXPECT_EQ((*spec.boundary_terms)[0].x_site, (Site{3, 1}));
  EXPECT_EQ(to_json(spec), j);
  try {
    lattice_spec_from_json(Json::parse(R"({"rows": 3, "cols": 3, "boundary": "torus"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
  }
  EXPECT_THROW(lattice_spec_from_json(Json::parse(R"({"rows": "x"})")), Error);
}

TEST(GeometryJsonTest, Contents) {
  const Json g = geometry_json(build_lattice(device_spec()));
  EXPECT_EQ(g["sites"].size(), 9u);
  EXPECT_EQ(g["plaquettes"].size(), 4u);
  EXPECT_EQ(g["groups"].size(), 4u);
  EXPECT_EQ(g["plaquettes"][0]["operator"], build_lattice(device_spec()).plaquettes()[0].op().to_string());
}

TEST(ParamsJsonTest, RoundTrip) {
  DriveParamSet p;
  PlaquetteDriveParams q;
  q.field_e1 = 12.5;
  q.static_coupling = {0.1, -0.2, 0.3};
  q.harmonic_coupling = {1.0, 2.0, -3.0};
  p.plaquette = q;
  p.plaquette_jtau = 0.39;
  p.boundary = BoundaryDriveParams{-0.2, 1.5};
  ThreeSpinDriveParams t;
  t.z = {0.01, 1.2, 1.1};
  t.coupling_23 = 0.4;
  p.three_spin = t;
  p.three_spin_jtau = -0.06;
  const DriveParamSet r = drive_params_from_json(Json::parse(to_json(p).dump()));
  EXPECT_EQ(r.plaquette->to_array(), q.to_array());
  EXPECT_EQ(r.plaquette_jtau, 0.39);
  EXPECT_EQ(r.boundary->lambda, 1.5);
  EXPECT_EQ(r.three_spin->to_array(), t.to_array());
  EXPECT_EQ(r.three_spin_jtau, -0.06);
}

TEST(PrepJsonTest, RoundTrip) {
  LatticeSpec spec;
  spec.rows = 4;
  spec.cols = 5;
  const auto gates = build_prep_sequence(build_lattice(spec));
  const auto back = prep_gates_from_json(to_json(gates));
  ASSERT_EQ(back.size(), gates.size());
  for (std::size_t k = 0; k < gates.size(); ++k) {
    EXPECT_EQ(back[k].kind, gates[k].kind);
    EXPECT_EQ(back[k].anchor, gates[k].anchor);
    EXPECT_EQ(back[k].group, gates[k].group);
    EXPECT_EQ(back[k].diagonal, gates[k].diagonal);
  }
}

TEST(ProbeJsonTest, PartitionAndBraidRoundTrip) {
  LatticeSpec spec;
  spec.rows = 4;
  spec.cols = 5;
  const Lattice lat = build_lattice(spec);
  const Partition p = preset_partition(lat, "disk");
  const Partition q = partition_from_json(to_json(p));
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.c, p.c);
  const BraidProtocol b = preset_braid(lat, "dyon-exchange");
  const BraidProtocol c = braid_from_json(to_json(b));
  ASSERT_EQ(c.braid.size(), b.braid.size());
  for (std::size_t k = 0; k < b.braid.size(); ++k) EXPECT_EQ(c.braid[k].letters, b.braid[k].letters);
}

TEST(SequenceJsonTest, ReplayGivesSameUnitary) {
  LatticeSpec spec;
  spec.rows = 2;
  spec.cols = 3;
  const double x[8] = {12.992337, 10.989939, -0.259826, -0.000418,
                       -0.466758, -0.508721, -1.885955, -0.013470};
  SequenceOptions opt;
  opt.field = 0.05;
  opt.n_steps = 64;
  const TrotterSequence seq = build_sequence(
      build_lattice(spec), PlaquetteDriveParams::from_array(std::span<const double>(x, 8)), {}, opt);
  const TrotterSequence back = sequence_from_json(Json::parse(to_json(seq).dump()), 64);
  EXPECT_LT((period_unitary(seq) - period_unitary(back)).norm(), 1e-13);
}

TEST(MatrixFileTest, RoundTripIsExact) {
  const auto dir = temp_dir();
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(5, 3);
  write_matrix(dir / "m", m, {{"duration", 6.28}});
  EXPECT_EQ(read_matrix(dir / "m"), m);
  const Json meta = read_json(dir / "m.json");
  EXPECT_EQ(meta["order"], "row-major");
  EXPECT_EQ(meta["duration"], 6.28);
  // Row-major: the second complex number in the file is m(0, 1).
  std::ifstream in(dir / "m.bin", std::ios::binary);
  double v[4];
  in.read(reinterpret_cast<char*>(v), sizeof v);
  EXPECT_EQ(v[2], m(0, 1).real());
  EXPECT_EQ(v[3], m(0, 1).imag());
  std::filesystem::remove_all(dir);
}

TEST(MatrixFileTest, MissingFile) {
  try {
    read_matrix("/nonexistent/m");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(CsvTest, UnitsHeaderAndRows) {
  PauliSum a;
  a.add(PauliString::parse("X0.Z1.Z2.X3"), -0.0625);
  a.add(PauliString::parse("X0"), 1e-5);
  const std::string csv = pauli_sum_csv(a);
  EXPECT_EQ(csv.rfind(kUnitsLine, 0), 0u);
  EXPECT_NE(csv.find("X0.Z1.Z2.X3,4,0.0625"), std::string::npos);
  std::vector<AdiabaticSample> t = {{0, 0.0, 0.1, 0.5, 0.0, 0.0, 0.0}};
  EXPECT_NE(trajectory_csv(t).find("step,time,field,fidelity,S_topo,X_L,Z_L"), std::string::npos);
  EXPECT_NE(spectrum_csv({{0.1, {-0.01, 0.02}}}).find("1,0.02"), std::string::npos);
}

}  // namespace
}  // namespace floquet_toric
