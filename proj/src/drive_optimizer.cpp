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

#include "floquet_toric/drive_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "floquet_toric/errors.hpp"
#include "floquet_toric/parallel.hpp"

namespace floquet_toric {
namespace {

PauliSum hopping(std::size_t a, std::size_t b) {
  PauliSum h(PauliString{{a, Pauli::X}, {b, Pauli::X}}, 1.0);
  h.add(PauliString{{a, Pauli::Y}, {b, Pauli::Y}}, 1.0);
  return h;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// One synthesis problem: a parametrized drive with a single-string target.
struct Problem {
  int n_sites = 0;
  std::function<DriveSpec(std::span<const double>)> build;
  PauliString target;
  double sign = -1.0;
  double jtau = 0.0;

  Eigen::MatrixXcd target_unitary() const {
    return rotation_unitary(target, n_sites, -sign * jtau);
  }
};

// 2d - 2|tr(V^dag U)|, the squared phase-aligned distance.
double squared_distance(const Problem& pr, const Eigen::MatrixXcd& v,
                        std::span<const double> x, int n_steps) {
  const Eigen::MatrixXcd u = propagator_fixed(DenseDrive(pr.build(x)), kDrivePeriod, n_steps);
  const double d = static_cast<double>(u.rows());
  return std::max(0.0, 2.0 * d - 2.0 * std::abs((v.adjoint() * u).trace()));
}

double constrained_objective(const Problem& pr, const Eigen::MatrixXcd& v,
                             std::span<const double> x, int n_steps, double weight) {
  const Eigen::MatrixXcd u = propagator_fixed(DenseDrive(pr.build(x)), kDrivePeriod, n_steps);
  const double d = static_cast<double>(u.rows());
  const double dist = std::max(0.0, 2.0 * d - 2.0 * std::abs((v.adjoint() * u).trace()));
  try {
    const Eigen::MatrixXcd h = effective_hamiltonian(u, kDrivePeriod);
    const Eigen::MatrixXcd p = to_dense(PauliSum(pr.target, 1.0), pr.n_sites);
    const double c = (p * h).trace().real() / d;
    const double err = pr.sign * c * kDrivePeriod - pr.jtau;
    return dist + weight * err * err;
  } catch (const Error&) {
    return dist + weight;
  }
}

struct Candidate {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
};

// Runs the restarts in parallel, keeps the best by value (ties by index).
Candidate best_of_restarts(const Problem& pr, const OptimizerSettings& s,
                           const std::function<std::vector<double>(std::size_t)>& init,
                           int& total_iterations, int& total_evaluations,
                           int& best_index) {
  const Eigen::MatrixXcd v = pr.target_unitary();
  std::vector<Candidate> results;
  const std::size_t total = static_cast<std::size_t>(s.restarts);
  const std::size_t batch = static_cast<std::size_t>(std::max(1, s.batch));
  for (std::size_t start = 0; start < total; start += batch) {
    const std::size_t count = std::min(batch, total - start);
    results.resize(start + count);
    parallel_for(count, [&](std::size_t offset) {
      const std::size_t k = start + offset;
      auto f = [&](std::span<const double> x) {
        return squared_distance(pr, v, x, s.search_steps);
      };
      const MinimizeResult r = minimize_bfgs(f, init(k), s.fd_step, s.max_iterations,
                                             s.gradient_tol, s.value_floor);
      results[k] = Candidate{r.x, r.value, r.iterations, r.evaluations};
    });
    bool accepted = false;
    for (const auto& c : results) accepted = accepted || c.value < s.accept_value;
    if (accepted) break;
  }
  Candidate best;
  best_index = -1;
  for (std::size_t k = 0; k < results.size(); ++k) {
    total_iterations += results[k].iterations;
    total_evaluations += results[k].evaluations;
    if (results[k].value < best.value) {
      best = results[k];
      best_index = static_cast<int>(k);
    }
  }
  return best;
}

struct Synthesis {
  std::vector<double> x;
  OptimizationReport report;
};

Synthesis synthesize(const Problem& pr, const OptimizerSettings& s,
                     const std::function<std::vector<double>(std::size_t)>& init,
                     int extra_iterations, int extra_evaluations) {
  if (s.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts < 1");
  int iterations = extra_iterations;
  int evaluations = extra_evaluations;
  int best_index = -1;
  Candidate best = best_of_restarts(pr, s, init, iterations, evaluations, best_index);

  const double d = static_cast<double>(std::size_t{1} << pr.n_sites);
  const double best_infidelity = best.value / (2.0 * d);
  if (!(best_infidelity < s.success_infidelity)) {
    throw Error(ErrorCode::kOptimizationFailed,
                "best restart reached infidelity " + std::to_string(best_infidelity));
  }

  const Eigen::MatrixXcd v = pr.target_unitary();
  auto polish = [&](std::span<const double> x) {
    return constrained_objective(pr, v, x, s.polish_steps, s.constraint_weight);
  };
  const MinimizeResult refined =
      minimize_bfgs(polish, best.x, s.fd_step, s.max_iterations, s.gradient_tol, s.value_floor);
  iterations += refined.iterations;
  evaluations += refined.evaluations;

  Synthesis out;
  out.x = refined.x;
  out.report = analyze_drive(pr.build(out.x), pr.target, pr.jtau, pr.sign);
  out.report.iterations = iterations;
  out.report.evaluations = evaluations;
  out.report.best_restart = best_index;
  return out;
}

}  // namespace

std::array<double, PlaquetteDriveParams::kSize> PlaquetteDriveParams::to_array() const {
  return {field_e1,           field_e2,           static_coupling[0],
          static_coupling[1], static_coupling[2], harmonic_coupling[0],
          harmonic_coupling[1], harmonic_coupling[2]};
}

PlaquetteDriveParams PlaquetteDriveParams::from_array(std::span<const double> x,
                                                      std::array<int, 3> multiples) {
  if (x.size() != kSize) throw Error(ErrorCode::kInvalidArgument, "expected 8 parameters");
  PlaquetteDriveParams p;
  p.field_e1 = x[0];
  p.field_e2 = x[1];
  p.static_coupling = {x[2], x[3], x[4]};
  p.harmonic_coupling = {x[5], x[6], x[7]};
  p.harmonic_multiple = multiples;
  return p;
}

std::array<double, ThreeSpinDriveParams::kSize> ThreeSpinDriveParams::to_array() const {
  return {field_1, field_3, coupling_12, coupling_23, z[0], z[1], z[2]};
}

ThreeSpinDriveParams ThreeSpinDriveParams::from_array(std::span<const double> x) {
  if (x.size() != kSize) throw Error(ErrorCode::kInvalidArgument, "expected 7 parameters");
  ThreeSpinDriveParams p;
  p.field_1 = x[0];
  p.field_3 = x[1];
  p.coupling_12 = x[2];
  p.coupling_23 = x[3];
  p.z = {x[4], x[5], x[6]};
  return p;
}

DriveSpec plaquette_drive(const PlaquetteDriveParams& p, double field) {
  DriveSpec d;
  d.n_sites = 4;
  d.add(PauliSum(PauliString::single(0, Pauli::X), 1.0),
        Waveform::constant_value(p.field_e1 + field));
  d.add(PauliSum(PauliString::single(3, Pauli::X), 1.0),
        Waveform::constant_value(p.field_e2 + field));
  for (std::size_t k = 0; k < 3; ++k) {
    d.add(hopping(k, k + 1),
          Waveform{p.static_coupling[k],
                   {Harmonic{p.harmonic_multiple[k], p.harmonic_coupling[k],
                             HarmonicKind::kCosine}}});
  }
  return d;
}

DriveSpec boundary_drive(const BoundaryDriveParams& p) {
  DriveSpec d;
  d.n_sites = 2;
  d.add(hopping(0, 1), Waveform{0.0, {Harmonic{1, p.coupling, HarmonicKind::kCosine}}});
  d.add(PauliSum(PauliString::single(1, Pauli::Y), 1.0),
        Waveform{0.0, {Harmonic{1, p.lambda, HarmonicKind::kSine}}});
  return d;
}

DriveSpec three_spin_drive(const ThreeSpinDriveParams& p, double field) {
  DriveSpec d;
  d.n_sites = 3;
  d.add(PauliSum(PauliString::single(0, Pauli::X), 1.0), Waveform::constant_value(p.field_1 + field));
  d.add(PauliSum(PauliString::single(2, Pauli::X), 1.0),
        Waveform::constant_value(p.field_3 + field));
  d.add(hopping(0, 1), Waveform::constant_value(p.coupling_12));
  d.add(hopping(1, 2), Waveform::constant_value(p.coupling_23));
  d.add(PauliSum(PauliString::single(1, Pauli::Z), 1.0),
        Waveform{p.z[0], {Harmonic{1, p.z[1], HarmonicKind::kCosine},
                          Harmonic{2, p.z[2], HarmonicKind::kCosine}}});
  return d;
}

PauliString plaquette_target() { return PauliString::parse("X0.Z1.Z2.X3"); }
PauliString boundary_target() { return PauliString::parse("X0.Z1"); }
PauliString three_spin_target() { return PauliString::parse("X0.Z1.X2"); }

Eigen::MatrixXcd rotation_unitary(const PauliString& p, int n_sites, double angle) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  return std::cos(angle) * Eigen::MatrixXcd::Identity(dim, dim) +
         Complex(0.0, std::sin(angle)) * to_dense(PauliSum(p, 1.0), n_sites);
}

double phase_aligned_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  const double d = static_cast<double>(u.rows());
  return std::sqrt(std::max(0.0, 2.0 * d - 2.0 * std::abs((v.adjoint() * u).trace())));
}

double infidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  return std::max(0.0, 1.0 - std::abs((v.adjoint() * u).trace()) / static_cast<double>(u.rows()));
}

double objective(const PlaquetteDriveParams& p, double jtau, int n_steps) {
  const DriveSpec d = plaquette_drive(p);
  const Eigen::MatrixXcd u = n_steps > 0
                                 ? propagator_fixed(DenseDrive(d), kDrivePeriod, n_steps)
                                 : propagator(d, kDrivePeriod).unitary;
  return phase_aligned_distance(u, rotation_unitary(plaquette_target(), 4, jtau));
}

double extract_jtau(const PauliSum& heff, const PauliString& target, double target_sign) {
  return target_sign * heff.coefficient(target).real() * kDrivePeriod;
}

OptimizationReport analyze_drive(const DriveSpec& drive, const PauliString& target,
                                 double jtau, double target_sign) {
  const Eigen::MatrixXcd u = propagator(drive, kDrivePeriod).unitary;
  const Eigen::MatrixXcd v = rotation_unitary(target, drive.n_sites, -target_sign * jtau);
  OptimizationReport r;
  r.final_infidelity = infidelity(u, v);
  r.objective = phase_aligned_distance(u, v);
  r.coefficients = from_dense(effective_hamiltonian(u, kDrivePeriod), drive.n_sites, 1e-14);
  r.extracted_jtau = extract_jtau(r.coefficients, target, target_sign);
  const double j = std::abs(r.coefficients.coefficient(target));
  double other_sq = 0.0;
  double other_max = 0.0;
  for (const auto& [s, c] : r.coefficients.terms()) {
    if (s == target) continue;
    other_sq += std::norm(c);
    other_max = std::max(other_max, std::abs(c));
  }
  r.error_ratio = j > 0.0 ? std::sqrt(other_sq) / j : std::numeric_limits<double>::infinity();
  r.max_other_ratio = j > 0.0 ? other_max / j : std::numeric_limits<double>::infinity();
  return r;
}

PlaquetteResult optimize_plaquette(double jtau, std::uint64_t seed,
                                   const OptimizerSettings& s) {
  if (!(jtau > 0.0) || jtau > std::numbers::pi / 4) {
    throw Error(ErrorCode::kInvalidArgument, "plaquette J tau must lie in (0, pi/4]");
  }
  Problem pr;
  pr.n_sites = 4;
  pr.target = plaquette_target();
  pr.sign = -1.0;
  pr.jtau = jtau;
  pr.build = [m = s.harmonic_multiple](std::span<const double> x) {
    return plaquette_drive(PlaquetteDriveParams::from_array(x, m));
  };

  // Stage 1: harmonic amplitudes only, fields and static couplings at zero.
  auto rng1 = stream(seed, 0, 1);
  std::uniform_real_distribution<double> amp(0.2, 3.0);
  std::vector<double> g1{amp(rng1), amp(rng1), amp(rng1)};
  const Eigen::MatrixXcd v = pr.target_unitary();
  auto stage1 = [&](std::span<const double> y) {
    const std::array<double, 8> x{0, 0, 0, 0, 0, y[0], y[1], y[2]};
    return squared_distance(pr, v, x, s.search_steps);
  };
  const MinimizeResult first =
      minimize_bfgs(stage1, g1, s.fd_step, s.max_iterations, s.gradient_tol, s.value_floor);

  // Stage 2: all parameters. Static fields start on integer multiples of the
  // drive frequency, where a bare field alone returns to the identity.
  auto init = [&](std::size_t k) {
    auto rng = stream(seed, k, 2);
    std::uniform_int_distribution<int> field(8, 14);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> x(PlaquetteDriveParams::kSize);
    x[0] = field(rng);
    x[1] = field(rng);
    for (int c = 0; c < 3; ++c) x[2 + c] = 0.01 * noise(rng);
    for (int c = 0; c < 3; ++c) x[5 + c] = first.x[c] * (1.0 + s.perturbation * noise(rng));
    return x;
  };
  Synthesis out = synthesize(pr, s, init, first.iterations, first.evaluations);
  return PlaquetteResult{PlaquetteDriveParams::from_array(out.x, s.harmonic_multiple),
                         std::move(out.report)};
}

BoundaryResult optimize_boundary(double jtau, std::uint64_t seed,
                                 const OptimizerSettings& s) {
  if (!(jtau > 0.0) || jtau > std::numbers::pi / 4) {
    throw Error(ErrorCode::kInvalidArgument, "boundary J tau must lie in (0, pi/4]");
  }
  Problem pr;
  pr.n_sites = 2;
  pr.target = boundary_target();
  pr.sign = -1.0;
  pr.jtau = jtau;
  pr.build = [](std::span<const double> x) {
    return boundary_drive(BoundaryDriveParams{x[0], x[1]});
  };
  auto init = [&](std::size_t k) {
    auto rng = stream(seed, k, 3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double g = u(rng);
    return std::vector<double>{g, u(rng)};
  };
  Synthesis out = synthesize(pr, s, init, 0, 0);
  return BoundaryResult{BoundaryDriveParams{out.x[0], out.x[1]}, std::move(out.report)};
}

ThreeSpinResult optimize_three_spin(double jtau, std::uint64_t seed,
                                    const OptimizerSettings& s) {
  if (jtau == 0.0 || std::abs(jtau) > std::numbers::pi / 4) {
    throw Error(ErrorCode::kInvalidArgument, "three-spin J tau must lie in [-pi/4, pi/4]");
  }
  Problem pr;
  pr.n_sites = 3;
  pr.target = three_spin_target();
  pr.sign = 1.0;
  pr.jtau = jtau;
  pr.build = [](std::span<const double> x) {
    return three_spin_drive(ThreeSpinDriveParams::from_array(x));
  };

  auto init = [&](std::size_t k) {
    auto rng = stream(seed, k, 5);
    std::uniform_int_distribution<int> field(8, 14);
    std::uniform_real_distribution<double> coupling(0.1, 1.0);
    std::uniform_real_distribution<double> amp(0.2, 3.0);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> x(ThreeSpinDriveParams::kSize);
    x[0] = field(rng);
    x[1] = field(rng);
    x[2] = coupling(rng);
    x[3] = coupling(rng);
    x[4] = noise(rng);
    x[5] = amp(rng);
    x[6] = amp(rng);
    return x;
  };
  Synthesis out = synthesize(pr, s, init, 0, 0);
  return ThreeSpinResult{ThreeSpinDriveParams::from_array(out.x), std::move(out.report)};
}

RobustnessResult robustness_sweep(const PlaquetteDriveParams& params, double eta_max,
                                  int n, std::uint64_t seed, int n_steps) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "robustness sweep needs n >= 1");
  if (eta_max < 0.0) throw Error(ErrorCode::kInvalidArgument, "eta_max < 0");
  const auto base = params.to_array();
  std::vector<Eigen::MatrixXcd> hams(static_cast<std::size_t>(n));
  parallel_for(hams.size(), [&](std::size_t k) {
    auto rng = stream(seed, k, 6);
    std::uniform_real_distribution<double> eta(-eta_max, eta_max);
    std::array<double, PlaquetteDriveParams::kSize> x = base;
    if (eta_max > 0.0) {
      for (double& v : x) v += eta(rng);
    }
    const DriveSpec d =
        plaquette_drive(PlaquetteDriveParams::from_array(x, params.harmonic_multiple));
    const Eigen::MatrixXcd u =
        n_steps > 0 ? propagator_fixed(DenseDrive(d), kDrivePeriod, n_steps)
                    : propagator(d, kDrivePeriod).unitary;
    hams[k] = effective_hamiltonian(u, kDrivePeriod);
  });

  RobustnessResult out;
  out.realizations = n;
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(16, 16);
  for (const auto& h : hams) {
    mean += h;
    const PauliSum c = from_dense(h, 4);
    for (const auto& [s, coef] : c.terms()) out.mean_magnitude.add(s, std::abs(coef) / n);
  }
  out.mean_magnitude.prune(1e-14);
  out.averaged_hamiltonian = from_dense(mean / static_cast<double>(n), 4, 1e-14);
  for (const auto& [weight, entries] : weight_spectrum(out.mean_magnitude)) {
    if (!entries.empty()) {
      out.weight_maxima[weight] = RobustnessEntry{entries.front().first, entries.front().second};
    }
  }
  return out;
}

bool target_dominant(const PauliSum& magnitudes, const PauliString& target, double factor) {
  const double t = std::abs(magnitudes.coefficient(target));
  double other = 0.0;
  for (const auto& [s, c] : magnitudes.terms()) {
    if (s != target && s.weight() == target.weight() && std::abs(c) >= t) return false;
    if (s != target) other = std::max(other, std::abs(c));
  }
  return t >= factor * other;
}

MinimizeResult minimize_bfgs(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x, double fd_step, int max_iterations,
                             double gradient_tol, double value_floor) {
  const std::size_t n = x.size();
  MinimizeResult res;
  auto eval = [&](std::span<const double> y) {
    ++res.evaluations;
    return f(y);
  };
  auto gradient = [&](const std::vector<double>& y) {
    std::vector<double> g(n);
    std::vector<double> probe = y;
    for (std::size_t k = 0; k < n; ++k) {
      probe[k] = y[k] + fd_step;
      const double up = eval(probe);
      probe[k] = y[k] - fd_step;
      const double down = eval(probe);
      probe[k] = y[k];
      g[k] = (up - down) / (2.0 * fd_step);
    }
    return g;
  };

  double fx = eval(x);
  std::vector<double> g = gradient(x);
  std::vector<double> hinv(n * n, 0.0);
  auto reset = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) hinv[k * n + k] = 1.0;
  };
  reset();
  constexpr double kMaxStep = 1.0;
  constexpr double kArmijo = 1e-4;
  int stalls = 0;

  for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
    if (fx < value_floor || std::sqrt(dot(g, g)) < gradient_tol) break;
    std::vector<double> p(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) p[r] -= hinv[r * n + c] * g[c];
    }
    double slope = dot(g, p);
    if (!(slope < 0.0)) {
      reset();
      for (std::size_t k = 0; k < n; ++k) p[k] = -g[k];
      slope = -dot(g, g);
    }
    const double pnorm = std::sqrt(dot(p, p));
    double alpha = pnorm > kMaxStep ? kMaxStep / pnorm : 1.0;
    std::vector<double> trial(n);
    double ft = fx;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = x[k] + alpha * p[k];
      ft = eval(trial);
      if (ft <= fx + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // A failed search along a quasi-Newton direction gets one retry along
      // the gradient before giving up.
      if (stalls++ > 0) break;
      reset();
      continue;
    }
    stalls = 0;
    std::vector<double> gt = gradient(trial);
    std::vector<double> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = trial[k] - x[k];
      y[k] = gt[k] - g[k];
    }
    const double improvement = fx - ft;
    x = trial;
    g = gt;
    const double sy = dot(s, y);
    if (sy > 1e-18) {
      std::vector<double> hy(n, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) hy[r] += hinv[r * n + c] * y[c];
      }
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          hinv[r * n + c] += (1.0 + yhy * rho) * rho * s[r] * s[c] -
                             rho * (hy[r] * s[c] + s[r] * hy[c]);
        }
      }
    }
    fx = ft;
    if (improvement <= 1e-15 * std::max(1.0, std::abs(fx))) break;
  }
  res.x = std::move(x);
  res.value = fx;
  return res;
}

}  // namespace floquet_toric
