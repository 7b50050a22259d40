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

#include "floquet_toric/pauli_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "floquet_toric/errors.hpp"

namespace floquet_toric {

namespace {

// i^k for k taken mod 4.
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_site(std::size_t site) {
  if (site >= PauliString::kMaxSites) {
    throw Error(ErrorCode::kSiteOutOfRange,
                "site " + std::to_string(site) + " exceeds PauliString capacity");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString::PauliString(
    std::initializer_list<std::pair<std::size_t, Pauli>> letters) {
  for (const auto& [site, p] : letters) set(site, p);
}

PauliString::PauliString(
    std::span<const std::pair<std::size_t, Pauli>> letters) {
  for (const auto& [site, p] : letters) set(site, p);
}

PauliString PauliString::single(std::size_t site, Pauli p) {
  PauliString s;
  s.set(site, p);
  return s;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString s;
  if (text.empty() || text == "I") return s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('.', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    if (token.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed Pauli token '" + std::string(token) + "'");
    }
    Pauli p = pauli_from_char(token[0]);
    std::size_t site = 0;
    for (char c : token.substr(1)) {
      if (c < '0' || c > '9') {
        throw Error(ErrorCode::kInvalidArgument,
                    "malformed site index in '" + std::string(token) + "'");
      }
      site = site * 10 + static_cast<std::size_t>(c - '0');
    }
    if (s.at(site) != Pauli::I) {
      throw Error(ErrorCode::kInvalidArgument,
                  "site repeated in '" + std::string(text) + "'");
    }
    s.set(site, p);
    pos = end + 1;
  }
  return s;
}

Pauli PauliString::at(std::size_t site) const {
  if (site >= kMaxSites) return Pauli::I;
  const std::size_t w = site / 64;
  const std::uint64_t bit = 1ULL << (site % 64);
  const bool x = x_[w] & bit;
  const bool z = z_[w] & bit;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(std::size_t site, Pauli p) {
  check_site(site);
  const std::size_t w = site / 64;
  const std::uint64_t bit = 1ULL << (site % 64);
  x_[w] &= ~bit;
  z_[w] &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_[w] |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_[w] |= bit;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < kWords; ++k) w += std::popcount(x_[k] | z_[k]);
  return w;
}

bool PauliString::is_identity() const {
  for (std::size_t k = 0; k < kWords; ++k) {
    if (x_[k] | z_[k]) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, Pauli>> PauliString::letters() const {
  std::vector<std::pair<std::size_t, Pauli>> out;
  out.reserve(weight());
  for (std::size_t k = 0; k < kWords; ++k) {
    std::uint64_t occ = x_[k] | z_[k];
    while (occ) {
      const int b = std::countr_zero(occ);
      occ &= occ - 1;
      const std::size_t site = 64 * k + static_cast<std::size_t>(b);
      out.emplace_back(site, at(site));
    }
  }
  return out;
}

std::size_t PauliString::span_sites() const {
  for (std::size_t k = kWords; k-- > 0;) {
    const std::uint64_t occ = x_[k] | z_[k];
    if (occ) return 64 * k + 64 - static_cast<std::size_t>(std::countl_zero(occ));
  }
  return 0;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int parity = 0;
  for (std::size_t k = 0; k < kWords; ++k) {
    parity += std::popcount((x_[k] & other.z_[k]) ^ (z_[k] & other.x_[k]));
  }
  return (parity % 2) == 0;
}

bool PauliString::overlaps(const PauliString& other) const {
  for (std::size_t k = 0; k < kWords; ++k) {
    if ((x_[k] | z_[k]) & (other.x_[k] | other.z_[k])) return true;
  }
  return false;
}

int PauliString::y_count() const {
  int n = 0;
  for (std::size_t k = 0; k < kWords; ++k) n += std::popcount(x_[k] & z_[k]);
  return n;
}

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::ostringstream os;
  bool first = true;
  for (const auto& [site, p] : letters()) {
    if (!first) os << '.';
    os << to_char(p) << site;
    first = false;
  }
  return os.str();
}

PauliString PauliString::relabeled(std::span<const std::size_t> sites) const {
  PauliString out;
  for (const auto& [site, p] : letters()) {
    if (site >= sites.size()) {
      throw Error(ErrorCode::kSiteOutOfRange,
                  "relabel map does not cover site " + std::to_string(site));
    }
    out.set(sites[site], p);
  }
  return out;
}

std::pair<Complex, PauliString> multiply_strings(const PauliString& a,
                                                 const PauliString& b) {
  PauliString out;
  int plus = 0;
  int minus = 0;
  for (std::size_t k = 0; k < PauliString::kWords; ++k) {
    const std::uint64_t xa = a.x_[k], za = a.z_[k];
    const std::uint64_t xb = b.x_[k], zb = b.z_[k];
    const std::uint64_t a_x = xa & ~za, a_y = xa & za, a_z = ~xa & za;
    const std::uint64_t b_x = xb & ~zb, b_y = xb & zb, b_z = ~xb & zb;
    // X.Y = iZ, Y.Z = iX, Z.X = iY and the reversed orders give -i.
    plus += std::popcount((a_x & b_y) | (a_y & b_z) | (a_z & b_x));
    minus += std::popcount((a_x & b_z) | (a_y & b_x) | (a_z & b_y));
    out.x_[k] = xa ^ xb;
    out.z_[k] = za ^ zb;
  }
  return {i_power(plus - minus), out};
}

bool PauliStringReadableLess::operator()(const PauliString& a,
                                         const PauliString& b) const {
  const std::size_t wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  const auto la = a.letters(), lb = b.letters();
  return std::lexicographical_compare(
      la.begin(), la.end(), lb.begin(), lb.end(),
      [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        return static_cast<int>(p.second) < static_cast<int>(q.second);
      });
}

std::size_t PauliStringHash::operator()(const PauliString& s) const noexcept {
  std::uint64_t h = 0;
  for (std::size_t k = 0; k < PauliString::kWords; ++k) {
    h = mix64(h ^ s.x_bits()[k]);
    h = mix64(h ^ s.z_bits()[k]);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(const PauliString& s, Complex c) { add(s, c); }

PauliSum PauliSum::identity(Complex c) { return PauliSum(PauliString{}, c); }

void PauliSum::add(const PauliString& s, Complex c) {
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

void PauliSum::add(const PauliSum& other, Complex scale) {
  for (const auto& [s, c] : other.terms_) add(s, c * scale);
}

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

PauliSum& PauliSum::prune(double threshold) {
  std::erase_if(terms_,
                [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
  return *this;
}

double PauliSum::norm() const {
  double s = 0.0;
  for (const auto& [str, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

double PauliSum::max_abs() const {
  double m = 0.0;
  for (const auto& [str, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) {
    return std::abs(kv.second.imag()) <= tol;
  });
}

std::size_t PauliSum::span_sites() const {
  std::size_t n = 0;
  for (const auto& [s, c] : terms_) n = std::max(n, s.span_sites());
  return n;
}

std::vector<std::pair<PauliString, Complex>> PauliSum::sorted_terms() const {
  std::vector<std::pair<PauliString, Complex>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return PauliStringReadableLess{}(a.first, b.first);
  });
  return out;
}

PauliSum PauliSum::relabeled(std::span<const std::size_t> sites) const {
  PauliSum out;
  for (const auto& [s, c] : terms_) out.add(s.relabeled(sites), c);
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  add(other, 1.0);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  add(other, -1.0);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, s] = multiply_strings(sa, sb);
      out.add(s, phase * ca * cb);
    }
  }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (!sa.overlaps(sb) || sa.commutes_with(sb)) continue;
      auto [phase, s] = multiply_strings(sa, sb);
      out.add(s, 2.0 * phase * ca * cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Baker-Campbell-Hausdorff

namespace {

// B_{2p} / (2p)! for p = 1, 2, ...
double bernoulli_ratio(int p) {
  static constexpr double kBernoulli[] = {
      1.0 / 6.0,     -1.0 / 30.0,   1.0 / 42.0,      -1.0 / 30.0,
      5.0 / 66.0,    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,
      43867.0 / 798.0, -174611.0 / 330.0};
  if (p < 1 || p > 10) {
    throw Error(ErrorCode::kInvalidArgument, "BCH order too large");
  }
  double fact = 1.0;
  for (int k = 2; k <= 2 * p; ++k) fact *= k;
  return kBernoulli[p - 1] / fact;
}

}  // namespace

PauliSum bch_log_product(const PauliSum& a, const PauliSum& b, int max_order,
                         double threshold) {
  if (max_order < 1 || max_order > 21) {
    throw Error(ErrorCode::kInvalidArgument, "BCH max_order must be in [1, 21]");
  }
  const PauliSum sum = a + b;
  const PauliSum diff = a - b;

  // z[n] is the homogeneous degree-n part; nested[m][r] is the sum over all
  // compositions of r into m parts of [Z_k1,[Z_k2,...,[Z_km, A+B]]].
  std::vector<PauliSum> z(static_cast<std::size_t>(max_order) + 1);
  std::vector<std::vector<PauliSum>> nested(
      static_cast<std::size_t>(max_order) + 1,
      std::vector<PauliSum>(static_cast<std::size_t>(max_order) + 1));
  z[1] = sum;

  PauliSum result = sum;
  // Single orders can vanish by symmetry (e.g. degree 4 for two Pauli
  // generators on one qubit), so stop only after two quiet orders in a row.
  bool previous_quiet = false;
  for (int n = 1; n < max_order; ++n) {
    // nested[m][n] for m >= 1 uses z[1..n] and nested[m-1][r < n].
    for (int m = 1; m <= n; ++m) {
      PauliSum acc;
      for (int k = 1; k <= n - m + 1; ++k) {
        const PauliSum& inner = (m == 1) ? (k == n ? sum : PauliSum{})
                                         : nested[m - 1][n - k];
        if (inner.empty() || z[k].empty()) continue;
        acc += commutator(z[k], inner);
      }
      acc.prune(threshold);
      nested[m][n] = std::move(acc);
    }

    PauliSum next = commutator(diff, z[n]) * 0.5;
    for (int p = 1; 2 * p <= n; ++p) {
      if (!nested[2 * p][n].empty()) next.add(nested[2 * p][n], bernoulli_ratio(p));
    }
    next *= 1.0 / static_cast<double>(n + 1);
    next.prune(threshold);

    const double contribution = next.norm();
    result += next;
    z[n + 1] = std::move(next);
    const bool quiet = contribution < threshold;
    if (quiet && (previous_quiet || n + 1 == max_order)) {
      return result.prune(threshold);
    }
    previous_quiet = quiet;
    if (n + 1 == max_order) {
      std::ostringstream msg;
      msg << "BCH order " << max_order << " still contributes " << std::scientific
          << contribution;
      throw Error(ErrorCode::kNonConvergence, msg.str());
    }
  }
  return result.prune(threshold);
}

PauliSum bch_log_product(std::span<const PauliSum> generators, int max_order,
                         double threshold) {
  if (generators.empty()) return PauliSum{};
  PauliSum acc = generators.front();
  for (std::size_t k = 1; k < generators.size(); ++k) {
    acc = bch_log_product(acc, generators[k], max_order, threshold);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Dense conversion

Eigen::MatrixXcd to_dense(const PauliSum& a, int n_sites, int dense_limit) {
  if (n_sites < 0 || n_sites > dense_limit || n_sites > 30) {
    throw Error(ErrorCode::kTooLarge,
                "dense conversion of " + std::to_string(n_sites) + " sites");
  }
  if (a.span_sites() > static_cast<std::size_t>(n_sites)) {
    throw Error(ErrorCode::kSiteOutOfRange,
                "operator acts beyond " + std::to_string(n_sites) + " sites");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : a.terms()) {
    const std::uint64_t flip = s.flip_mask();
    const std::uint64_t sign = s.sign_mask();
    const Complex base = c * i_power(s.y_count());
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      const bool neg = std::popcount(col & sign) & 1;
      m(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) +=
          neg ? -base : base;
    }
  }
  return m;
}

PauliSum from_dense(const Eigen::MatrixXcd& h, int n_sites, double threshold) {
  if (n_sites < 0 || n_sites > 6) {
    throw Error(ErrorCode::kTooLarge,
                "Pauli decomposition limited to 6 sites, got " +
                    std::to_string(n_sites));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (h.rows() != dim || h.cols() != dim) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not 2^n x 2^n");
  }
  PauliSum out;
  const std::uint64_t n_strings = 1ULL << (2 * n_sites);
  for (std::uint64_t code = 0; code < n_strings; ++code) {
    PauliString s;
    for (int site = 0; site < n_sites; ++site) {
      s.set(static_cast<std::size_t>(site),
            static_cast<Pauli>((code >> (2 * site)) & 3U));
    }
    // P|c> = phase(c)|c^flip>, so tr(P H) = sum_c phase(c) H(c, c^flip).
    const std::uint64_t flip = s.flip_mask();
    const std::uint64_t sign = s.sign_mask();
    const Complex base = i_power(s.y_count());
    Complex tr{0.0, 0.0};
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
      const bool neg = std::popcount(c & sign) & 1;
      const Complex entry = h(static_cast<Eigen::Index>(c),
                              static_cast<Eigen::Index>(c ^ flip));
      tr += neg ? -base * entry : base * entry;
    }
    tr /= static_cast<double>(dim);
    if (std::abs(tr) > threshold && tr != Complex{0.0, 0.0}) out.add(s, tr);
  }
  return out;
}

WeightSpectrum weight_spectrum(const PauliSum& a) {
  WeightSpectrum out;
  for (const auto& [s, c] : a.sorted_terms()) {
    out[s.weight()].emplace_back(s, std::abs(c));
  }
  for (auto& [w, list] : out) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
  }
  return out;
}

}  // namespace floquet_toric
