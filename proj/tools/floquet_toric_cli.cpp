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

// Command-line runner. Every subcommand reads an optional JSON config, writes
// its artifacts plus manifest.json into --out, and on failure writes
// error.json and exits nonzero (2 for invalid input, 1 otherwise).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "floquet_toric/device.hpp"
#include "floquet_toric/errors.hpp"
#include "floquet_toric/ground_state.hpp"
#include "floquet_toric/io.hpp"
#include "floquet_toric/parallel.hpp"
#include "floquet_toric/topology_probes.hpp"
#include "floquet_toric/trotter_engine.hpp"

#ifndef FT_VERSION
#define FT_VERSION "unknown"
#endif

namespace ft = floquet_toric;
namespace fs = std::filesystem;
using ft::Json;

namespace {

struct RunContext {
  std::string subcommand;
  std::string mode;
  Json config = Json::object();
  std::uint64_t seed = 0;
  int threads = 1;
  fs::path out;
  std::vector<std::string> artifacts;

  void write_json(const std::string& name, const Json& j) {
    ft::write_json(out / name, j);
    artifacts.push_back(name);
  }
  void write_text(const std::string& name, const std::string& text) {
    ft::write_text(out / name, text);
    artifacts.push_back(name);
  }
  void write_matrix(const std::string& name, const Eigen::MatrixXcd& m, const Json& meta) {
    ft::write_matrix(out / name, m, meta);
    artifacts.push_back(name + ".bin");
    artifacts.push_back(name + ".json");
  }

  template <typename T>
  T get(const std::string& key, T fallback) const {
    return config.contains(key) ? config.at(key).get<T>() : fallback;
  }
};

// Relative paths inside a config resolve against the config's directory.
fs::path g_config_dir = ".";

fs::path resolve(const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : g_config_dir / path;
}

ft::Lattice lattice_from(const RunContext& ctx, const Json& fallback) {
  return ft::build_lattice(ft::lattice_spec_from_json(ctx.config.value("lattice", fallback)));
}

ft::DriveParamSet params_from(const RunContext& ctx, const char* key = "params") {
  if (!ctx.config.contains(key)) {
    throw ft::Error(ft::ErrorCode::kMissingParams, std::string("config needs '") + key + "'");
  }
  const Json& p = ctx.config.at(key);
  return ft::drive_params_from_json(p.is_string() ? ft::read_json(resolve(p.get<std::string>())) : p);
}

ft::OptimizerSettings settings_from(const RunContext& ctx) {
  ft::OptimizerSettings s;
  const Json o = ctx.config.value("optimizer", Json::object());
  s.restarts = o.value("restarts", s.restarts);
  s.batch = o.value("batch", s.batch);
  s.max_iterations = o.value("max_iterations", s.max_iterations);
  s.search_steps = o.value("search_steps", s.search_steps);
  s.polish_steps = o.value("polish_steps", s.polish_steps);
  s.accept_value = o.value("accept_value", s.accept_value);
  return s;
}

Json optimization_summary(const ft::OptimizationReport& r) {
  Json j = ft::to_json(r);
  j.erase("coefficients");
  return j;
}

void run_optimize(RunContext& ctx, const std::string& which) {
  const ft::OptimizerSettings s = settings_from(ctx);
  ft::DriveParamSet set;
  ft::OptimizationReport report;
  if (which == "plaquette") {
    const double jtau = ctx.get("jtau", std::numbers::pi / 8);
    const auto r = ft::optimize_plaquette(jtau, ctx.seed, s);
    set.plaquette = r.params;
    set.plaquette_jtau = jtau;
    report = r.report;
  } else if (which == "boundary") {
    const double jtau = ctx.get("jtau", std::numbers::pi / 8);
    const auto r = ft::optimize_boundary(jtau, ctx.seed, s);
    set.boundary = r.params;
    set.boundary_jtau = jtau;
    report = r.report;
  } else {
    const double jtau = ctx.get("jtau", -std::numbers::pi / 50);
    const auto r = ft::optimize_three_spin(jtau, ctx.seed, s);
    set.three_spin = r.params;
    set.three_spin_jtau = jtau;
    report = r.report;
  }
  ctx.write_json("params.json", ft::to_json(set));
  ctx.write_json("report.json", optimization_summary(report));
  ctx.write_text("coefficients.csv", ft::pauli_sum_csv(report.coefficients));
}

void run_effective_ham(RunContext& ctx) {
  const ft::DriveParamSet params = params_from(ctx);
  const std::string mode = ctx.get<std::string>("mode", "lattice");
  if (mode == "plaquette") {
    if (!params.plaquette) throw ft::Error(ft::ErrorCode::kMissingParams, "no plaquette drive");
    const ft::DriveSpec drive = ft::plaquette_drive(*params.plaquette);
    const ft::OptimizationReport r =
        ft::analyze_drive(drive, ft::plaquette_target(), params.plaquette_jtau, -1.0);
    const auto spectrum = ft::weight_spectrum(r.coefficients);
    Json j = optimization_summary(r);
    if (spectrum.contains(4)) {
      j["weight4_maximum"] = {{"string", spectrum.at(4).front().first.to_string()},
                              {"magnitude", spectrum.at(4).front().second}};
    }
    j["hamiltonian"] = ft::to_json(r.coefficients);
    ctx.write_json("effective_hamiltonian.json", j);
    ctx.write_text("effective_hamiltonian.csv", ft::pauli_sum_csv(r.coefficients));
    const auto u = ft::propagator(drive, ft::kDrivePeriod);
    ctx.write_matrix("propagator", u.unitary,
                     {{"duration", ft::kDrivePeriod}, {"n_steps", u.n_steps}, {"tolerance", 1e-12}});
    return;
  }
  if (mode != "lattice") throw ft::Error(ft::ErrorCode::kInvalidSpec, "mode must be plaquette or lattice");
  const ft::Lattice lat = lattice_from(ctx, Json{{"rows", 5}, {"cols", 5}, {"boundary", "mixed"}});
  const double coupling = ctx.get("coupling", 1.0 / 16.0);
  const ft::TrotterSequence seq = ft::build_sequence(lat, params.plaquette, params.boundary);
  const ft::PauliSum target = ft::target_hamiltonian(lat, coupling);
  const auto report = ft::effective_hamiltonian_symbolic(seq, target, ctx.get("bch_order", ft::kLatticeBchOrder));
  const ft::ErrorSummary sum = ft::error_report(report, target, ctx.get<std::size_t>("long_weight", 5));
  Json j = ft::to_json(report);
  j["error_summary"] = {{"max_relative_deviation", sum.max_relative_deviation},
                        {"residual_ratio", sum.residual_ratio},
                        {"residual_max", {{"string", sum.residual_max.string.to_string()},
                                          {"magnitude", sum.residual_max.magnitude}}},
                        {"long_string_max", {{"string", sum.long_string_max.string.to_string()},
                                             {"magnitude", sum.long_string_max.magnitude}}}};
  ctx.write_json("effective_hamiltonian.json", j);
  ctx.write_text("effective_hamiltonian.csv", ft::pauli_sum_csv(report.hamiltonian));
  ctx.write_text("residual.csv", ft::pauli_sum_csv(sum.residual));
  ctx.write_json("geometry.json", ft::geometry_json(lat));
  ctx.write_json("sequence.json", ft::to_json(seq));
}

void run_robustness(RunContext& ctx) {
  const ft::DriveParamSet params = params_from(ctx);
  if (!params.plaquette) throw ft::Error(ft::ErrorCode::kMissingParams, "no plaquette drive");
  const double eta = ctx.get("eta_max", 0.01);
  const int n = ctx.get("realizations", 1000);
  const auto r = ft::robustness_sweep(*params.plaquette, eta, n, ctx.seed, ctx.get("n_steps", 256));
  const double factor = ctx.get("dominance_factor", 10.0);
  Json maxima = Json::object();
  for (const auto& [w, e] : r.weight_maxima) {
    maxima[std::to_string(w)] = {{"string", e.string.to_string()}, {"magnitude", e.magnitude}};
  }
  ctx.write_json("robustness.json",
                 {{"eta_max", eta},
                  {"realizations", r.realizations},
                  {"dominance_factor", factor},
                  {"target_dominant", ft::target_dominant(r.mean_magnitude, ft::plaquette_target(), factor)},
                  {"weight_maxima", maxima}});
  ctx.write_text("robustness.csv", ft::robustness_csv(r));
}

ft::Json bulk_lattice_json() { return Json{{"rows", 4}, {"cols", 5}, {"boundary", "open"}}; }

ft::PrepResult prepare_state(const RunContext& ctx, const ft::Lattice& lat, ft::GateMode mode) {
  std::optional<ft::PlaquetteDriveParams> p;
  if (mode == ft::GateMode::kFloquet) p = params_from(ctx).plaquette;
  return ft::run_prep(lat, mode, p, ctx.get("coupling", 1.0 / 16.0));
}

ft::GateMode gate_mode(const std::string& m) {
  if (m == "ideal") return ft::GateMode::kIdeal;
  if (m == "floquet") return ft::GateMode::kFloquet;
  throw ft::Error(ft::ErrorCode::kInvalidArgument, "mode must be ideal or floquet");
}

void run_prepare(RunContext& ctx) {
  const ft::Lattice lat = lattice_from(ctx, bulk_lattice_json());
  const ft::PrepResult r = prepare_state(ctx, lat, gate_mode(ctx.mode));
  ctx.write_json("prep_sequence.json", ft::to_json(r.gates));
  Json d = ft::to_json(r.diagnostics);
  d["depth"] = ft::prep_depth(r.gates);
  d["mode"] = ctx.mode;
  ctx.write_json("diagnostics.json", d);
}

template <typename T, typename Preset, typename Parse>
std::vector<T> items(const RunContext& ctx, const std::string& key, const ft::Lattice& lat,
                     const std::vector<std::string>& defaults, Preset preset, Parse parse) {
  std::vector<T> out;
  const Json list = ctx.config.value(key, Json(defaults));
  for (const Json& e : list) out.push_back(e.is_string() ? preset(lat, e.get<std::string>()) : parse(e));
  return out;
}

void run_probe(RunContext& ctx) {
  const ft::Lattice lat = lattice_from(ctx, bulk_lattice_json());
  const std::string source = ctx.get<std::string>("state", "oracle");
  const ft::StateVector state = source == "oracle" ? ft::projector_oracle(lat)
                                                   : prepare_state(ctx, lat, gate_mode(source)).state;
  if (ctx.mode == "entropy") {
    std::vector<std::pair<std::string, ft::TopologicalEntropy>> topo;
    for (const ft::Partition& p : items<ft::Partition>(
             ctx, "partitions", lat, ft::partition_preset_names(lat), ft::preset_partition,
             ft::partition_from_json)) {
      topo.emplace_back(p.name, ft::topological_entropy(state, p));
    }
    std::vector<std::pair<std::string, ft::EntropyScaling>> scaling;
    const Json regions = ctx.config.value("regions", Json(ft::region_preset_names(lat)));
    for (const Json& r : regions) {
      const std::string name = r.is_string() ? r.get<std::string>() : r.value("name", std::string("region"));
      const ft::Region sites = r.is_string() ? ft::preset_region(lat, name) : r.at("sites").get<ft::Region>();
      scaling.emplace_back(name, ft::entropy_scaling(state, sites, lat));
    }
    ctx.write_text("topological_entropy.csv", ft::topological_entropy_csv(topo));
    ctx.write_text("entropy_scaling.csv", ft::entropy_scaling_csv(scaling));
    Json j = Json::array();
    for (const auto& [name, t] : topo) j.push_back({{"partition", name}, {"S_topo", t.value}});
    ctx.write_json("entropy.json", {{"state", source}, {"topological_entropy", j}});
    return;
  }
  if (ctx.mode != "braid") throw ft::Error(ft::ErrorCode::kInvalidArgument, "probe kind must be entropy or braid");
  Json out = Json::array();
  for (const ft::BraidProtocol& b : items<ft::BraidProtocol>(ctx, "braids", lat, ft::braid_preset_names(lat),
                                                             ft::preset_braid, ft::braid_from_json)) {
    const ft::Complex phase = ft::braiding_phase(state, b);
    out.push_back({{"braid", b.name}, {"re", phase.real()}, {"im", phase.imag()}, {"protocol", ft::to_json(b)}});
  }
  ctx.write_json("braiding.json", {{"state", source}, {"phases", out}});
}

ft::DeviceParams device_params(const RunContext& ctx) {
  const ft::DriveParamSet set = params_from(ctx);
  if (!set.plaquette || !set.boundary) {
    throw ft::Error(ft::ErrorCode::kMissingParams, "device needs plaquette and boundary drives");
  }
  ft::DeviceParams p;
  p.coupling = ctx.get("coupling", ft::kDeviceCoupling);
  p.plaquette = *set.plaquette;
  p.boundary = *set.boundary;
  p.three_spin = set.three_spin;
  p.three_spin_jtau = set.three_spin_jtau;
  return p;
}

void run_device_spectrum(RunContext& ctx) {
  const ft::Lattice lat = ft::build_lattice(ft::device_spec());
  const ft::DeviceParams p = device_params(ctx);
  const bool xl = ctx.get("include_xl", false);
  const int sign = ctx.get("xl_sign", 1);
  const std::vector<double> fields = ctx.get("fields", std::vector<double>{0.0});
  const double period = (xl ? 5 : 4) * ft::kDrivePeriod;
  const ft::SpectrumRow ideal{
      0.0, ft::reference_quasienergies(lat, p.coupling, xl ? sign * p.coupling : 0.0, period)};
  std::vector<ft::SpectrumRow> rows;
  Json zero_field_deviation = nullptr;
  for (double r : fields) {
    const ft::TrotterSequence seq = ft::device_sequence(lat, p, xl, r, sign, ctx.get("n_steps", 0));
    rows.push_back({r, ft::quasienergy_spectrum(seq)});
    if (r == 0.0) {
      double dev = 0.0;
      for (std::size_t n = 0; n < ideal.quasienergies.size(); ++n) {
        dev = std::max(dev, std::abs(rows.back().quasienergies[n] - ideal.quasienergies[n]));
      }
      zero_field_deviation = dev;
    }
  }
  ctx.write_text("spectrum.csv", ft::spectrum_csv(rows));
  ctx.write_text("spectrum_ideal.csv", ft::spectrum_csv({ideal}));
  ctx.write_json("spectrum.json", {{"include_xl", xl}, {"xl_sign", sign}, {"max_deviation_at_zero_field", zero_field_deviation}});
}

void run_adiabatic(RunContext& ctx) {
  const ft::Lattice lat = ft::build_lattice(ft::device_spec());
  const ft::DeviceParams p = device_params(ctx);
  ft::RampSchedule s;
  s.initial_field = ctx.get("initial_field", s.initial_field);
  s.periods = ctx.get("periods", s.periods);
  s.steepness = ctx.get("steepness", s.steepness);
  const std::string shape = ctx.get<std::string>("ramp", "arctan");
  if (shape == "linear") {
    s.shape = ft::RampShape::kLinear;
  } else if (shape != "arctan") {
    throw ft::Error(ft::ErrorCode::kInvalidArgument, "ramp must be arctan or linear");
  }
  const int sign = ctx.get("sign", 1);
  const ft::AdiabaticResult r = ft::adiabatic_run(lat, p, s, sign, ctx.get("n_steps", 256));
  const ft::AdiabaticSample& last = r.trajectory.back();
  ctx.write_text("trajectory.csv", ft::trajectory_csv(r.trajectory));
  ctx.write_json("adiabatic.json", {{"sign", sign},
                                    {"periods", s.periods},
                                    {"initial_field", s.initial_field},
                                    {"final_fidelity", last.fidelity},
                                    {"final_topological_entropy", last.topological_entropy},
                                    {"final_x_l", last.x_l},
                                    {"final_z_l", last.z_l}});
}

int exit_code_for(ft::ErrorCode c) {
  switch (c) {
    case ft::ErrorCode::kInvalidSpec:
    case ft::ErrorCode::kPartitionImpossible:
    case ft::ErrorCode::kUnsupportedGeometry:
    case ft::ErrorCode::kSiteOutOfRange:
    case ft::ErrorCode::kTooLarge:
    case ft::ErrorCode::kInvalidArgument:
    case ft::ErrorCode::kMissingParams:
      return 2;
    default:
      return 1;
  }
}

void write_error(const fs::path& out, const std::string& code, const std::string& message) {
  const Json j = {{"error", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
  try {
    ft::write_json(out / "error.json", j);
  } catch (...) {
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet synthesis and probes of the four-spin plaquette model"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::uint64_t seed = 7;
  std::string out_dir = "out";
  int threads = 1;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_dir, "Output directory")->envname("FLOQUET_TORIC_OUT");
  app.add_option("--threads", threads, "Worker threads")->envname("FLOQUET_TORIC_THREADS")->check(CLI::PositiveNumber);

  std::string mode;
  const std::vector<std::string> plain = {"optimize-plaquette", "optimize-boundary", "optimize-threespin",
                                          "effective-ham",      "robustness",        "device-spectrum",
                                          "adiabatic"};
  for (const std::string& name : plain) app.add_subcommand(name);
  app.add_subcommand("prepare")->add_option("mode", mode, "ideal or floquet")->required()->check(
      CLI::IsMember({"ideal", "floquet"}));
  app.add_subcommand("probe")->add_option("kind", mode, "entropy or braid")->required()->check(
      CLI::IsMember({"entropy", "braid"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  RunContext ctx;
  ctx.subcommand = sub;
  ctx.mode = mode;
  ctx.seed = seed;
  ctx.threads = threads;
  ctx.out = out_dir;
  try {
    fs::create_directories(ctx.out);
    if (!config_path.empty()) {
      ctx.config = ft::read_json(config_path);
      g_config_dir = fs::path(config_path).parent_path();
      if (g_config_dir.empty()) g_config_dir = ".";
    }
    ft::set_thread_count(threads);
    if (sub == "optimize-plaquette") run_optimize(ctx, "plaquette");
    if (sub == "optimize-boundary") run_optimize(ctx, "boundary");
    if (sub == "optimize-threespin") run_optimize(ctx, "three_spin");
    if (sub == "effective-ham") run_effective_ham(ctx);
    if (sub == "robustness") run_robustness(ctx);
    if (sub == "prepare") run_prepare(ctx);
    if (sub == "probe") run_probe(ctx);
    if (sub == "device-spectrum") run_device_spectrum(ctx);
    if (sub == "adiabatic") run_adiabatic(ctx);
    ctx.write_json("manifest.json", {{"subcommand", sub},
                                     {"mode", mode},
                                     {"version", FT_VERSION},
                                     {"seed", seed},
                                     {"threads", threads},
                                     {"config", ctx.config},
                                     {"units", {{"energy", "omega"}, {"time", "tau"}}},
                                     {"artifacts", ctx.artifacts}});
  } catch (const ft::Error& e) {
    write_error(ctx.out, std::string(ft::to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    write_error(ctx.out, "InvalidSpec", e.what());
    return 2;
  } catch (const std::exception& e) {
    write_error(ctx.out, "Internal", e.what());
    return 1;
  }
  return 0;
}
