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

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

static_assert(std::endian::native == std::endian::little, "binary matrices assume little-endian");

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json site_json(Site s) { return Json::array({s.i, s.j}); }

Site site_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kInvalidSpec, "site must be [i, j]");
  return Site{j[0].get<int>(), j[1].get<int>()};
}

// Wraps nlohmann errors so every malformed document surfaces as kInvalidSpec.
template <typename F>
auto parse_guard(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string(what) + ": " + e.what());
  }
}

std::string_view kind_name(MemberKind k) {
  switch (k) {
    case MemberKind::kPlaquette: return "plaquette";
    case MemberKind::kBoundary: return "boundary";
    case MemberKind::kField: return "field";
    case MemberKind::kCustom: return "custom";
  }
  return "custom";
}

MemberKind kind_from_name(const std::string& s) {
  if (s == "plaquette") return MemberKind::kPlaquette;
  if (s == "boundary") return MemberKind::kBoundary;
  if (s == "field") return MemberKind::kField;
  if (s == "custom") return MemberKind::kCustom;
  throw Error(ErrorCode::kInvalidSpec, "unknown member kind '" + s + "'");
}

Region region_from_json(const Json& j) { return j.get<Region>(); }

}  // namespace

Json to_json(const PauliSum& a) {
  Json out = Json::array();
  for (const auto& [s, c] : a.sorted_terms()) {
    out.push_back({{"string", s.to_string()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

PauliSum pauli_sum_from_json(const Json& j) {
  return parse_guard("pauli sum", [&] {
    PauliSum out;
    for (const Json& t : j) {
      out.add(PauliString::parse(t.at("string").get<std::string>()),
              Complex(t.at("re").get<double>(), t.value("im", 0.0)));
    }
    return out;
  });
}

LatticeSpec lattice_spec_from_json(const Json& j) {
  return parse_guard("lattice spec", [&] {
    LatticeSpec spec;
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    const std::string b = j.value("boundary", std::string("open"));
    if (b == "open") {
      spec.boundary = Boundary::kOpen;
    } else if (b == "mixed") {
      spec.boundary = Boundary::kMixed;
    } else {
      throw Error(ErrorCode::kInvalidSpec, "boundary must be 'open' or 'mixed'");
    }
    if (j.contains("extra_links")) {
      for (const Json& l : j.at("extra_links")) {
        spec.extra_links.emplace_back(site_from_json(l.at(0)), site_from_json(l.at(1)));
      }
    }
    if (j.contains("boundary_terms")) {
      std::vector<BoundaryTermSpec> terms;
      for (const Json& t : j.at("boundary_terms")) {
        terms.push_back({site_from_json(t.at("x")), site_from_json(t.at("z"))});
      }
      spec.boundary_terms = std::move(terms);
    }
    return spec;
  });
}

Json to_json(const LatticeSpec& spec) {
  Json out = {{"rows", spec.rows},
              {"cols", spec.cols},
              {"boundary", spec.boundary == Boundary::kOpen ? "open" : "mixed"}};
  if (!spec.extra_links.empty()) {
    Json links = Json::array();
    for (const auto& [a, b] : spec.extra_links) links.push_back({site_json(a), site_json(b)});
    out["extra_links"] = links;
  }
  if (spec.boundary_terms) {
    Json terms = Json::array();
    for (const auto& t : *spec.boundary_terms) {
      terms.push_back({{"x", site_json(t.x_site)}, {"z", site_json(t.z_site)}});
    }
    out["boundary_terms"] = terms;
  }
  return out;
}

Json geometry_json(const Lattice& lattice) {
  Json sites = Json::array();
  for (std::size_t k = 0; k < static_cast<std::size_t>(lattice.n_sites()); ++k) {
    const Site s = lattice.site(k);
    sites.push_back({{"index", k}, {"coord", site_json(s)}, {"even", s.is_even()}});
  }
  Json links = Json::array();
  for (const auto& [a, b] : lattice.links()) links.push_back({a, b});
  Json plaquettes = Json::array();
  for (const Plaquette& p : lattice.plaquettes()) {
    plaquettes.push_back({{"anchor", site_json(p.anchor)},
                          {"parity", p.parity == Parity::kEven ? "even" : "odd"},
                          {"chain", p.chain},
                          {"operator", p.op().to_string()}});
  }
  Json boundary = Json::array();
  for (const BoundaryTerm& b : lattice.boundary_terms()) {
    boundary.push_back({{"x_site", b.x_site}, {"z_site", b.z_site}, {"operator", b.op().to_string()}});
  }
  Json groups = Json::array();
  for (const TrotterGroup& g : partition_groups(lattice).groups) {
    groups.push_back({{"plaquettes", g.plaquettes}, {"boundary_terms", g.boundary_terms}});
  }
  return {{"spec", to_json(lattice.spec())}, {"sites", sites},         {"links", links},
          {"plaquettes", plaquettes},        {"boundary_terms", boundary}, {"groups", groups}};
}

Json to_json(const DriveParamSet& p) {
  Json out = {{"units", "omega"}};
  if (p.plaquette) {
    const auto& q = *p.plaquette;
    out["plaquette"] = {{"jtau", p.plaquette_jtau},
                        {"field_e1", q.field_e1},
                        {"field_e2", q.field_e2},
                        {"static_coupling", q.static_coupling},
                        {"harmonic_coupling", q.harmonic_coupling},
                        {"harmonic_multiple", q.harmonic_multiple}};
  }
  if (p.boundary) {
    out["boundary"] = {{"jtau", p.boundary_jtau},
                       {"coupling", p.boundary->coupling},
                       {"lambda", p.boundary->lambda}};
  }
  if (p.three_spin) {
    const auto& t = *p.three_spin;
    out["three_spin"] = {{"jtau", p.three_spin_jtau}, {"field_1", t.field_1},
                         {"field_3", t.field_3},      {"coupling_12", t.coupling_12},
                         {"coupling_23", t.coupling_23}, {"z", t.z}};
  }
  return out;
}

DriveParamSet drive_params_from_json(const Json& j) {
  return parse_guard("drive parameters", [&] {
    DriveParamSet out;
    if (j.contains("plaquette")) {
      const Json& q = j.at("plaquette");
      PlaquetteDriveParams p;
      p.field_e1 = q.at("field_e1").get<double>();
      p.field_e2 = q.at("field_e2").get<double>();
      p.static_coupling = q.at("static_coupling").get<std::array<double, 3>>();
      p.harmonic_coupling = q.at("harmonic_coupling").get<std::array<double, 3>>();
      p.harmonic_multiple =
          q.value("harmonic_multiple", std::array<int, 3>{1, 2, 2});
      out.plaquette = p;
      out.plaquette_jtau = q.value("jtau", 0.0);
    }
    if (j.contains("boundary")) {
      const Json& b = j.at("boundary");
      out.boundary = BoundaryDriveParams{b.at("coupling").get<double>(), b.at("lambda").get<double>()};
      out.boundary_jtau = b.value("jtau", 0.0);
    }
    if (j.contains("three_spin")) {
      const Json& t = j.at("three_spin");
      ThreeSpinDriveParams p;
      p.field_1 = t.at("field_1").get<double>();
      p.field_3 = t.at("field_3").get<double>();
      p.coupling_12 = t.at("coupling_12").get<double>();
      p.coupling_23 = t.at("coupling_23").get<double>();
      p.z = t.at("z").get<std::array<double, 3>>();
      out.three_spin = p;
      out.three_spin_jtau = t.value("jtau", 0.0);
    }
    return out;
  });
}

Json to_json(const OptimizationReport& r) {
  return {{"final_infidelity", r.final_infidelity},
          {"objective", r.objective},
          {"extracted_jtau", r.extracted_jtau},
          {"error_ratio", r.error_ratio},
          {"max_other_ratio", r.max_other_ratio},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"best_restart", r.best_restart},
          {"coefficients", to_json(r.coefficients)}};
}

Json to_json(const std::vector<PrepGate>& gates) {
  Json out = Json::array();
  for (const PrepGate& g : gates) {
    out.push_back({{"kind", g.kind == PrepKind::kA ? "A" : "B"},
                   {"anchor", site_json(g.anchor)},
                   {"group", g.group}});
  }
  return out;
}

std::vector<PrepGate> prep_gates_from_json(const Json& j) {
  return parse_guard("prep sequence", [&] {
    std::vector<PrepGate> out;
    for (const Json& g : j) {
      const std::string k = g.at("kind").get<std::string>();
      if (k != "A" && k != "B") throw Error(ErrorCode::kInvalidSpec, "gate kind must be A or B");
      const Site a = site_from_json(g.at("anchor"));
      out.push_back(PrepGate{k == "A" ? PrepKind::kA : PrepKind::kB, a, g.at("group").get<int>(),
                             a.i - a.j});
    }
    return out;
  });
}

Json to_json(const PrepDiagnostics& d) {
  Json stabs = Json::array();
  for (const auto& [s, v] : d.stabilizers) stabs.push_back({{"string", s.to_string()}, {"value", v}});
  return {{"energy", d.energy},
          {"ground_energy", d.ground_energy},
          {"energy_error", d.energy - d.ground_energy},
          {"fidelity", d.fidelity},
          {"min_stabilizer", d.min_stabilizer},
          {"stabilizers", stabs}};
}

Json to_json(const Partition& p) {
  return {{"name", p.name}, {"A", p.a}, {"B", p.b}, {"C", p.c}};
}

Partition partition_from_json(const Json& j) {
  return parse_guard("partition", [&] {
    return Partition{j.value("name", std::string()), region_from_json(j.at("A")),
                     region_from_json(j.at("B")), region_from_json(j.at("C"))};
  });
}

Json to_json(const AnyonString& s) {
  Json letters = Json::array();
  for (const auto& [site, p] : s.letters) letters.push_back({site, std::string(1, to_char(p))});
  return {{"name", s.name}, {"letters", letters}};
}

AnyonString anyon_string_from_json(const Json& j) {
  return parse_guard("anyon string", [&] {
    AnyonString s{j.value("name", std::string()), {}};
    for (const Json& l : j.at("letters")) {
      const std::string p = l.at(1).get<std::string>();
      if (p.size() != 1) throw Error(ErrorCode::kInvalidSpec, "letter must be one of X, Y, Z");
      s.letters.emplace_back(l.at(0).get<std::size_t>(), pauli_from_char(p[0]));
    }
    return s;
  });
}

Json to_json(const BraidProtocol& b) {
  Json create = Json::array(), braid = Json::array();
  for (const auto& s : b.create) create.push_back(to_json(s));
  for (const auto& s : b.braid) braid.push_back(to_json(s));
  return {{"name", b.name}, {"create", create}, {"braid", braid}};
}

BraidProtocol braid_from_json(const Json& j) {
  return parse_guard("braid", [&] {
    BraidProtocol b{j.value("name", std::string()), {}, {}};
    for (const Json& s : j.value("create", Json::array())) b.create.push_back(anyon_string_from_json(s));
    for (const Json& s : j.at("braid")) b.braid.push_back(anyon_string_from_json(s));
    return b;
  });
}

Json to_json(const DriveSpec& d) {
  Json terms = Json::array();
  for (const DriveTerm& t : d.terms) {
    Json harmonics = Json::array();
    for (const Harmonic& h : t.waveform.harmonics) {
      harmonics.push_back({{"multiple", h.multiple},
                           {"amplitude", h.amplitude},
                           {"kind", h.kind == HarmonicKind::kCosine ? "cos" : "sin"}});
    }
    terms.push_back({{"op", to_json(t.op)},
                     {"constant", t.waveform.constant},
                     {"harmonics", harmonics}});
  }
  return {{"n_sites", d.n_sites}, {"terms", terms}};
}

DriveSpec drive_spec_from_json(const Json& j) {
  return parse_guard("drive", [&] {
    DriveSpec d;
    d.n_sites = j.at("n_sites").get<int>();
    for (const Json& t : j.at("terms")) {
      Waveform w;
      w.constant = t.value("constant", 0.0);
      for (const Json& h : t.value("harmonics", Json::array())) {
        w.harmonics.push_back(Harmonic{h.at("multiple").get<int>(), h.at("amplitude").get<double>(),
                                       h.value("kind", std::string("cos")) == "sin"
                                           ? HarmonicKind::kSine
                                           : HarmonicKind::kCosine});
      }
      d.add(pauli_sum_from_json(t.at("op")), std::move(w));
    }
    return d;
  });
}

Json to_json(const TrotterSequence& seq) {
  Json substeps = Json::array();
  for (const Substep& s : seq.substeps) {
    Json members = Json::array();
    for (const SubsystemDrive& m : s.members) {
      members.push_back({{"kind", kind_name(m.kind)},
                         {"index", m.index},
                         {"sites", m.sites},
                         {"drive", to_json(m.drive)}});
    }
    substeps.push_back({{"members", members}});
  }
  return {{"n_sites", seq.n_sites}, {"period", seq.period()}, {"substeps", substeps}};
}

TrotterSequence sequence_from_json(const Json& j, int n_steps) {
  return parse_guard("sequence", [&] {
    TrotterSequence seq;
    seq.n_sites = j.at("n_sites").get<int>();
    for (const Json& s : j.at("substeps")) {
      Substep step;
      for (const Json& m : s.at("members")) {
        step.members.push_back(SubsystemDrive{kind_from_name(m.at("kind").get<std::string>()),
                                              m.at("index").get<std::size_t>(),
                                              m.at("sites").get<std::vector<std::size_t>>(),
                                              drive_spec_from_json(m.at("drive")),
                                              {}});
      }
      append_substep(seq, std::move(step), n_steps);
    }
    return seq;
  });
}

Json to_json(const EffectiveHamiltonianReport& r) {
  Json overlap = Json::array();
  for (const TargetComparison& t : r.target_overlap) {
    overlap.push_back({{"string", t.string.to_string()}, {"expected", t.expected}, {"actual", t.actual}});
  }
  Json maxima = Json::object();
  for (const auto& [w, e] : r.weight_maxima) {
    maxima[std::to_string(w)] = {{"string", e.string.to_string()}, {"magnitude", e.magnitude}};
  }
  return {{"period", r.period},
          {"target_overlap", overlap},
          {"leading_error",
           {{"string", r.leading_error.string.to_string()}, {"magnitude", r.leading_error.magnitude}}},
          {"weight_maxima", maxima},
          {"hamiltonian", to_json(r.hamiltonian)}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_matrix(const std::filesystem::path& base, const Eigen::MatrixXcd& m, const Json& metadata) {
  std::filesystem::path bin = base, meta = base;
  bin += ".bin";
  meta += ".json";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + bin.string());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v[2] = {m(r, c).real(), m(r, c).imag()};
      out.write(reinterpret_cast<const char*>(v), sizeof v);
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + bin.string());
  Json j = {{"rows", m.rows()}, {"cols", m.cols()}, {"dtype", "complex128"}, {"order", "row-major"}};
  for (const auto& [k, v] : metadata.items()) j[k] = v;
  write_json(meta, j);
}

Eigen::MatrixXcd read_matrix(const std::filesystem::path& base) {
  std::filesystem::path bin = base, meta = base;
  bin += ".bin";
  meta += ".json";
  const Json j = read_json(meta);
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + bin.string());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double v[2];
      in.read(reinterpret_cast<char*>(v), sizeof v);
      m(r, c) = Complex(v[0], v[1]);
    }
  }
  if (!in) throw Error(ErrorCode::kIo, "truncated matrix file " + bin.string());
  return m;
}

std::string robustness_csv(const RobustnessResult& r) {
  std::ostringstream out;
  out << kUnitsLine << "\n# realizations " << r.realizations << "\nweight,string,mean_magnitude\n";
  for (const auto& [w, entries] : weight_spectrum(r.mean_magnitude)) {
    for (const auto& [s, m] : entries) out << w << ',' << s.to_string() << ',' << num(m) << '\n';
  }
  return out.str();
}

std::string pauli_sum_csv(const PauliSum& a) {
  std::ostringstream out;
  out << kUnitsLine << "\nstring,weight,magnitude\n";
  for (const auto& [w, entries] : weight_spectrum(a)) {
    for (const auto& [s, m] : entries) out << s.to_string() << ',' << w << ',' << num(m) << '\n';
  }
  return out.str();
}

std::string topological_entropy_csv(
    const std::vector<std::pair<std::string, TopologicalEntropy>>& rows) {
  std::ostringstream out;
  out << "# entropies in natural-log units\npartition";
  for (std::string_view n : kEntropyTermNames) out << ",S_" << n;
  out << ",S_topo\n";
  for (const auto& [name, t] : rows) {
    out << name;
    for (double v : t.terms) out << ',' << num(v);
    out << ',' << num(t.value) << '\n';
  }
  return out.str();
}

std::string entropy_scaling_csv(const std::vector<std::pair<std::string, EntropyScaling>>& rows) {
  std::ostringstream out;
  out << "# entropies in natural-log units\nregion,crossed,measured,predicted\n";
  for (const auto& [name, e] : rows) {
    out << name << ',' << e.crossed << ',' << num(e.measured) << ',' << num(e.predicted) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const std::vector<AdiabaticSample>& trajectory) {
  std::ostringstream out;
  out << kUnitsLine << "\nstep,time,field,fidelity,S_topo,X_L,Z_L\n";
  for (const AdiabaticSample& s : trajectory) {
    out << s.step << ',' << num(s.time) << ',' << num(s.field) << ',' << num(s.fidelity) << ','
        << num(s.topological_entropy) << ',' << num(s.x_l) << ',' << num(s.z_l) << '\n';
  }
  return out.str();
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::ostringstream out;
  out << kUnitsLine << "\nindex,quasienergy,R\n";
  for (const SpectrumRow& r : rows) {
    for (std::size_t k = 0; k < r.quasienergies.size(); ++k) {
      out << k << ',' << num(r.quasienergies[k]) << ',' << num(r.field) << '\n';
    }
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace floquet_toric
