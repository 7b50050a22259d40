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

#include "floquet_toric/device.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

void check_device(const Lattice& device) {
  if (device.rows() != 3 || device.cols() != 3 || device.spec().boundary != Boundary::kMixed) {
    throw Error(ErrorCode::kUnsupportedGeometry, "the device is the 3x3 mixed-boundary lattice");
  }
}

DriveSpec constant_field(double field) {
  DriveSpec d;
  d.n_sites = 1;
  d.add(PauliSum(PauliString::single(0, Pauli::X), 1.0), Waveform::constant_value(field));
  return d;
}

}  // namespace

ThreeSpinDriveParams reversed_three_spin(const ThreeSpinDriveParams& p) {
  ThreeSpinDriveParams r = p;
  r.field_1 = -p.field_1;
  r.coupling_12 = -p.coupling_12;
  return r;
}

std::vector<std::size_t> logical_x_sites(const Lattice& device) {
  check_device(device);
  return {device.index({1, 2}), device.index({2, 2}), device.index({3, 2})};
}

TrotterSequence device_sequence(const Lattice& device, const DeviceParams& params,
                                bool include_xl, double field, int xl_sign, int n_steps) {
  check_device(device);
  SequenceOptions opt;
  opt.field = field;
  opt.n_steps = n_steps;
  TrotterSequence seq = build_sequence(device, params.plaquette, params.boundary, opt);
  if (!include_xl) return seq;
  if (!params.three_spin) {
    throw Error(ErrorCode::kMissingParams, "X_L substep needs a three-spin drive");
  }
  const bool flip = params.three_spin_jtau * xl_sign < 0.0;
  const ThreeSpinDriveParams p = flip ? reversed_three_spin(*params.three_spin) : *params.three_spin;
  Substep step;
  const std::vector<std::size_t> xl = logical_x_sites(device);
  step.members.push_back(
      SubsystemDrive{MemberKind::kCustom, 0, xl, three_spin_drive(p, field), {}});
  if (field != 0.0) {
    const std::set<std::size_t> busy(xl.begin(), xl.end());
    for (std::size_t s = 0; s < static_cast<std::size_t>(device.n_sites()); ++s) {
      if (!busy.contains(s)) {
        step.members.push_back(SubsystemDrive{MemberKind::kField, s, {s}, constant_field(field), {}});
      }
    }
  }
  append_substep(seq, std::move(step), n_steps);
  return seq;
}

PauliSum device_hamiltonian(const Lattice& device, double coupling, double xl_coupling,
                            double field) {
  PauliSum h = target_hamiltonian(device, coupling);
  PauliSum xl = logical_operators(device).x;
  xl *= Complex(xl_coupling);
  h += xl;
  if (field != 0.0) {
    for (std::size_t s = 0; s < static_cast<std::size_t>(device.n_sites()); ++s) {
      h.add(PauliString::single(s, Pauli::X), field);
    }
  }
  return h;
}

std::vector<double> fold_quasienergies(std::vector<double> phases, double period) {
  for (double& p : phases) {
    double f = std::remainder(p, 2.0 * std::numbers::pi);
    if (f <= -std::numbers::pi) f += 2.0 * std::numbers::pi;
    p = f / period;
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::vector<double> quasienergy_spectrum(const TrotterSequence& seq) {
  return fold_quasienergies(eigenphases(period_unitary(seq)), seq.period());
}

std::vector<double> reference_quasienergies(const Lattice& device, double coupling, double xl_coupling,
                                            double period) {
  const double duty = kDrivePeriod / period;
  const PauliSum h = device_hamiltonian(device, coupling * duty, xl_coupling * duty);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(h, device.n_sites()), Eigen::EigenvaluesOnly);
  std::vector<double> phases(eig.eigenvalues().begin(), eig.eigenvalues().end());
  for (double& e : phases) e *= period;
  return fold_quasienergies(std::move(phases), period);
}

StateVector ground_state(const PauliSum& h, int n_sites) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(h, n_sites));
  return StateVector(n_sites, eig.eigenvectors().col(0));
}

std::pair<double, double> logical_expectations(const Lattice& device, const StateVector& state) {
  const LogicalOperators l = logical_operators(device);
  return {expectation(state, l.x), expectation(state, l.z)};
}

double RampSchedule::ramp(double s) const {
  s = std::clamp(s, 0.0, 1.0);
  switch (shape) {
    case RampShape::kArctan:
      return 1.0 - std::atan(steepness * s) / std::atan(steepness);
    case RampShape::kLinear:
      return 1.0 - s;
  }
  return 0.0;
}

double RampSchedule::field(int period) const {
  return initial_field * ramp(static_cast<double>(period + 1) / periods);
}

StateVector minus_state(int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(dim));
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    amps(static_cast<Eigen::Index>(b)) = (std::popcount(b) % 2 == 0) ? a : -a;
  }
  return StateVector(n_sites, amps);
}

AdiabaticResult adiabatic_run(const Lattice& device, const DeviceParams& params,
                              const RampSchedule& schedule, int sign, int n_steps) {
  check_device(device);
  if (schedule.periods < 1) throw Error(ErrorCode::kInvalidArgument, "ramp needs at least one period");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::kInvalidArgument, "sign must be +1 or -1");
  const int n = device.n_sites();
  AdiabaticResult out;
  out.target = ground_state(device_hamiltonian(device, params.coupling, sign * params.coupling), n);
  const Partition partition = preset_partition(device, "device");
  StateVector psi = minus_state(n);
  auto sample = [&](int step, double time, double field) {
    const auto [x, z] = logical_expectations(device, psi);
    out.trajectory.push_back(AdiabaticSample{step, time, field, fidelity(psi, out.target),
                                             topological_entropy(psi, partition).value, x, z});
  };
  sample(0, 0.0, schedule.initial_field);
  double time = 0.0;
  for (int k = 0; k < schedule.periods; ++k) {
    const double field = schedule.field(k);
    const TrotterSequence seq = device_sequence(device, params, true, field, sign, n_steps);
    apply_period(psi, seq);
    time += seq.period() / kDrivePeriod;
    sample(k + 1, time, field);
  }
  out.final_state = std::move(psi);
  return out;
}

}  // namespace floquet_toric
