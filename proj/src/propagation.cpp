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

#include "floquet_toric/propagation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {
namespace {

// Fourth-order commutator-free Magnus scheme with Gauss-Legendre nodes.
const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kWeightEarly = 0.25 - kSqrt3 / 6.0;
const double kWeightLate = 0.25 + kSqrt3 / 6.0;

Complex basis_phase(const PauliString& p, std::uint64_t b) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int sign = std::popcount(b & p.sign_mask()) & 1;
  return kIPow[(p.y_count() + 2 * sign) & 3];
}

void check_string_fits(const PauliString& p, int n_sites) {
  if (p.span_sites() > static_cast<std::size_t>(n_sites)) {
    throw Error(ErrorCode::kSiteOutOfRange,
                "operator " + p.to_string() + " exceeds " +
                    std::to_string(n_sites) + " sites");
  }
}

}  // namespace

double Waveform::operator()(double t) const {
  double v = constant;
  for (const auto& h : harmonics) {
    const double arg = h.multiple * t;
    v += h.amplitude *
         (h.kind == HarmonicKind::kCosine ? std::cos(arg) : std::sin(arg));
  }
  return v;
}

bool Waveform::is_time_symmetric() const {
  return std::all_of(harmonics.begin(), harmonics.end(), [](const Harmonic& h) {
    return h.kind == HarmonicKind::kCosine || h.amplitude == 0.0;
  });
}

bool Waveform::is_zero() const {
  return constant == 0.0 &&
         std::all_of(harmonics.begin(), harmonics.end(),
                     [](const Harmonic& h) { return h.amplitude == 0.0; });
}

bool DriveSpec::is_time_symmetric() const {
  return std::all_of(terms.begin(), terms.end(), [](const DriveTerm& t) {
    return t.waveform.is_time_symmetric();
  });
}

DenseDrive::DenseDrive(const DriveSpec& drive) : n_sites_(drive.n_sites) {
  if (n_sites_ < 0 || n_sites_ > kMaxDenseDriveSites) {
    throw Error(ErrorCode::kTooLarge,
                "dense drive limited to " + std::to_string(kMaxDenseDriveSites) +
                    " sites");
  }
  real_ = true;
  for (const auto& term : drive.terms) {
    if (term.waveform.is_zero() || term.op.empty()) continue;
    if (!term.op.is_hermitian()) {
      throw Error(ErrorCode::kInvalidArgument, "drive operator not Hermitian");
    }
    Eigen::MatrixXcd m = to_dense(term.op, n_sites_);
    real_ = real_ && m.imag().cwiseAbs().maxCoeff() == 0.0;
    waveforms_.push_back(term.waveform);
    mats_.push_back(std::move(m));
  }
  if (real_) {
    for (const auto& m : mats_) real_mats_.push_back(m.real());
  }
}

Eigen::MatrixXcd DenseDrive::at(double t) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t k = 0; k < mats_.size(); ++k) h += waveforms_[k](t) * mats_[k];
  return h;
}

Eigen::MatrixXcd DenseDrive::step_exponential(double t1, double w1, double t2,
                                              double w2, double h) const {
  if (real_) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
    for (std::size_t k = 0; k < real_mats_.size(); ++k) {
      a += (w1 * waveforms_[k](t1) + w2 * waveforms_[k](t2)) * real_mats_[k];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::VectorXd phase = -h * es.eigenvalues();
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::MatrixXd re =
        v * phase.array().cos().matrix().asDiagonal() * v.transpose();
    const Eigen::MatrixXd im =
        v * phase.array().sin().matrix().asDiagonal() * v.transpose();
    Eigen::MatrixXcd out(dim(), dim());
    out.real() = re;
    out.imag() = im;
    return out;
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t k = 0; k < mats_.size(); ++k) {
    a += (w1 * waveforms_[k](t1) + w2 * waveforms_[k](t2)) * mats_[k];
  }
  return exp_hermitian(a, h);
}

Eigen::MatrixXcd propagator_fixed(const DenseDrive& drive, double duration,
                                  int n_steps) {
  if (n_steps < 1) throw Error(ErrorCode::kInvalidArgument, "n_steps < 1");
  const double h = duration / n_steps;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(drive.dim(), drive.dim());
  for (int s = 0; s < n_steps; ++s) {
    const double t0 = s * h;
    const double t1 = t0 + kNode1 * h;
    const double t2 = t0 + kNode2 * h;
    const Eigen::MatrixXcd first =
        drive.step_exponential(t1, kWeightLate, t2, kWeightEarly, h);
    const Eigen::MatrixXcd second =
        drive.step_exponential(t1, kWeightEarly, t2, kWeightLate, h);
    u = (second * (first * u)).eval();
  }
  return nearest_unitary(u);
}

PropagatorResult propagator(const DriveSpec& drive, double duration, int n_sub,
                            double tol) {
  if (n_sub < 1) throw Error(ErrorCode::kInvalidArgument, "n_sub < 1");
  const DenseDrive dense(drive);
  // The scheme is time-symmetric, so its error expands in h^4, h^6, ...;
  // one Richardson step on each doubling pair removes the h^4 term.
  int n = n_sub;
  Eigen::MatrixXcd coarse = propagator_fixed(dense, duration, n);
  std::optional<Eigen::MatrixXcd> prev;
  while (n <= kMaxPropagatorSteps / 2) {
    n *= 2;
    Eigen::MatrixXcd fine = propagator_fixed(dense, duration, n);
    Eigen::MatrixXcd extrapolated = nearest_unitary((16.0 * fine - coarse) / 15.0);
    if (prev && (extrapolated - *prev).norm() < tol) {
      return PropagatorResult{std::move(extrapolated), n};
    }
    prev = std::move(extrapolated);
    coarse = std::move(fine);
  }
  throw Error(ErrorCode::kNonConvergence,
              "propagator did not converge within 2^20 substeps");
}

Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU |
                                                      Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::MatrixXcd exp_hermitian(const Eigen::MatrixXcd& h, double t) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (-t * es.eigenvalues()).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd effective_hamiltonian(const Eigen::MatrixXcd& u,
                                       double duration) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "unitary must be square");
  }
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  const Eigen::MatrixXcd& q = schur.matrixU();
  const auto lambdas = schur.matrixT().diagonal();
  Eigen::VectorXd energies(lambdas.size());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    const double phase = std::arg(lambdas(k));
    if (std::numbers::pi - std::abs(phase) < 1e-6) {
      throw Error(ErrorCode::kBranchAmbiguity,
                  "eigenphase within 1e-6 of the branch cut");
    }
    energies(k) = -phase / duration;
  }
  Eigen::MatrixXcd h = q * energies.asDiagonal() * q.adjoint();
  h = (0.5 * (h + h.adjoint())).eval();
  const Complex shift = h.trace() / static_cast<double>(h.rows());
  h.diagonal().array() -= shift.real();
  return h;
}

std::vector<double> eigenphases(const Eigen::MatrixXcd& u) {
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  const auto lambdas = schur.matrixT().diagonal();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(lambdas.size()));
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    double phase = -std::arg(lambdas(k));
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    out.push_back(phase);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StateVector::StateVector(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 0 || n_sites > kStateVectorLimit) {
    throw Error(ErrorCode::kTooLarge,
                "statevector limited to " + std::to_string(kStateVectorLimit) +
                    " sites");
  }
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  amps_(0) = 1.0;
}

StateVector::StateVector(int n_sites, Eigen::VectorXcd amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  if (n_sites < 0 || n_sites > kStateVectorLimit) {
    throw Error(ErrorCode::kTooLarge, "statevector site limit exceeded");
  }
  if (amps_.size() != (Eigen::Index{1} << n_sites)) {
    throw Error(ErrorCode::kInvalidArgument, "amplitude length is not 2^n");
  }
}

StateVector StateVector::basis_state(int n_sites, std::uint64_t index) {
  StateVector s(n_sites);
  if (index >= s.dim()) throw Error(ErrorCode::kSiteOutOfRange, "basis index");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::kZeroNorm, "cannot normalize zero state");
  amps_ /= n;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_sites_ != n_sites_) {
    throw Error(ErrorCode::kInvalidArgument, "state size mismatch");
  }
  return amps_.dot(other.amps_);
}

void apply_gate(StateVector& state, std::span<const std::size_t> sites,
                const Eigen::MatrixXcd& u_local) {
  const std::size_t k = sites.size();
  if (k > static_cast<std::size_t>(kMaxGateSites)) {
    throw Error(ErrorCode::kTooLarge, "gate acts on too many sites");
  }
  const Eigen::Index local_dim = Eigen::Index{1} << k;
  if (u_local.rows() != local_dim || u_local.cols() != local_dim) {
    throw Error(ErrorCode::kInvalidArgument, "gate dimension mismatch");
  }
  std::uint64_t mask = 0;
  for (const std::size_t s : sites) {
    if (s >= static_cast<std::size_t>(state.n_sites())) {
      throw Error(ErrorCode::kSiteOutOfRange,
                  "gate site " + std::to_string(s) + " out of range");
    }
    if (mask >> s & 1U) throw Error(ErrorCode::kInvalidArgument, "repeated gate site");
    mask |= std::uint64_t{1} << s;
  }
  if (k == 0) {
    state.amplitudes() *= u_local(0, 0);
    return;
  }
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(local_dim), 0);
  for (std::size_t l = 0; l < offsets.size(); ++l) {
    for (std::size_t b = 0; b < k; ++b) {
      if (l >> b & 1U) offsets[l] |= std::uint64_t{1} << sites[b];
    }
  }
  Eigen::VectorXcd& amps = state.amplitudes();
  Eigen::VectorXcd in(local_dim), out(local_dim);
  const std::uint64_t dim = state.dim();
  // Enumerate indices with all gate bits cleared by stepping through the
  // complement mask.
  const std::uint64_t free_mask = (dim - 1) & ~mask;
  std::uint64_t base = 0;
  do {
    for (Eigen::Index l = 0; l < local_dim; ++l) {
      in(l) = amps(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(l)]));
    }
    out.noalias() = u_local * in;
    for (Eigen::Index l = 0; l < local_dim; ++l) {
      amps(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(l)])) = out(l);
    }
    base = (base - free_mask) & free_mask;
  } while (base != 0);
}

void apply_pauli(StateVector& state, const PauliString& p) {
  check_string_fits(p, state.n_sites());
  const std::uint64_t flip = p.flip_mask();
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out(in.size());
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    out(static_cast<Eigen::Index>(b ^ flip)) =
        basis_phase(p, b) * in(static_cast<Eigen::Index>(b));
  }
  state.amplitudes() = std::move(out);
}

StateVector apply_sum(const StateVector& state, const PauliSum& a) {
  StateVector out(state.n_sites(), Eigen::VectorXcd::Zero(state.amplitudes().size()));
  for (const auto& [p, c] : a.terms()) {
    check_string_fits(p, state.n_sites());
    const std::uint64_t flip = p.flip_mask();
    const Eigen::VectorXcd& in = state.amplitudes();
    Eigen::VectorXcd& acc = out.amplitudes();
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
      acc(static_cast<Eigen::Index>(b ^ flip)) +=
          c * basis_phase(p, b) * in(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

Complex expectation_string(const StateVector& state, const PauliString& p) {
  check_string_fits(p, state.n_sites());
  const std::uint64_t flip = p.flip_mask();
  const Eigen::VectorXcd& amps = state.amplitudes();
  Complex acc = 0.0;
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    acc += std::conj(amps(static_cast<Eigen::Index>(b ^ flip))) *
           basis_phase(p, b) * amps(static_cast<Eigen::Index>(b));
  }
  return acc;
}

double expectation(const StateVector& state, const PauliSum& a) {
  Complex acc = 0.0;
  for (const auto& [p, c] : a.terms()) acc += c * expectation_string(state, p);
  return acc.real();
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner(b));
}

}  // namespace floquet_toric
