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
 * Sparse symbolic algebra of multi-qubit Pauli operators.
 *
 * A PauliString stores only its non-identity letters, keyed by site. The
 * storage is a pair of fixed-width bit masks (the symplectic x/z encoding),
 * which makes products and commutation checks a handful of word operations.
 * A PauliSum is a sparse complex combination of strings; commutators only
 * touch pairs of strings whose supports overlap and anticommute.
 */

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace floquet_toric {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

class PauliString {
 public:
  static constexpr std::size_t kWords = 2;
  static constexpr std::size_t kMaxSites = 64 * kWords;

  PauliString() = default;

  /// Builds a string from (site, letter) pairs; identity letters are dropped.
  explicit PauliString(
      std::initializer_list<std::pair<std::size_t, Pauli>> letters);
  explicit PauliString(std::span<const std::pair<std::size_t, Pauli>> letters);

  static PauliString single(std::size_t site, Pauli p);

  /// Parses "X1.Z2.Z3.X4" (0-based sites); "I" or "" is the identity.
  static PauliString parse(std::string_view text);

  Pauli at(std::size_t site) const;
  void set(std::size_t site, Pauli p);

  std::size_t weight() const;
  bool is_identity() const;

  /// Sorted (site, letter) list of the non-identity entries.
  std::vector<std::pair<std::size_t, Pauli>> letters() const;

  /// Largest occupied site + 1 (0 for the identity).
  std::size_t span_sites() const;

  bool commutes_with(const PauliString& other) const;
  bool overlaps(const PauliString& other) const;

  /// Number of Y letters; fixes the phase of the computational-basis action.
  int y_count() const;

  /// "X1.Z2" with 0-based sites, or "I".
  std::string to_string() const;

  /// Remaps site k to sites[k]; sites must cover every occupied site.
  PauliString relabeled(std::span<const std::size_t> sites) const;

  const std::array<std::uint64_t, kWords>& x_bits() const { return x_; }
  const std::array<std::uint64_t, kWords>& z_bits() const { return z_; }

  /// Basis-state action for strings living on the lowest 64 sites:
  /// P|b> = phase(b) |b ^ flip_mask()>.
  std::uint64_t flip_mask() const { return x_[0]; }
  std::uint64_t sign_mask() const { return z_[0]; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator!=(const PauliString& a, const PauliString& b) {
    return !(a == b);
  }

  friend std::pair<Complex, PauliString> multiply_strings(
      const PauliString& a, const PauliString& b);

 private:
  std::array<std::uint64_t, kWords> x_{};
  std::array<std::uint64_t, kWords> z_{};
};

/// Site-wise product a*b; the phase is one of {+1, -1, +i, -i}.
std::pair<Complex, PauliString> multiply_strings(const PauliString& a,
                                                 const PauliString& b);

/// Orders strings by weight, then by their sorted letters.
struct PauliStringReadableLess {
  bool operator()(const PauliString& a, const PauliString& b) const;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& s) const noexcept;
};

/// Default pruning threshold for symbolic manipulations.
inline constexpr double kDefaultPruneThreshold = 1e-10;

class PauliSum {
 public:
  using Terms = std::unordered_map<PauliString, Complex, PauliStringHash>;

  PauliSum() = default;
  PauliSum(const PauliString& s, Complex c);

  static PauliSum identity(Complex c = 1.0);

  void add(const PauliString& s, Complex c);
  void add(const PauliSum& other, Complex scale = 1.0);

  Complex coefficient(const PauliString& s) const;

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  /// Drops every coefficient with magnitude below the threshold.
  PauliSum& prune(double threshold = kDefaultPruneThreshold);

  /// 2-norm of the coefficient vector.
  double norm() const;
  double max_abs() const;

  bool is_hermitian(double tol = 1e-12) const;
  std::size_t span_sites() const;

  /// Terms ordered by PauliStringReadableLess, for deterministic output.
  std::vector<std::pair<PauliString, Complex>> sorted_terms() const;

  PauliSum relabeled(std::span<const std::size_t> sites) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }

 private:
  Terms terms_;
};

/// Operator product A*B.
PauliSum operator*(const PauliSum& a, const PauliSum& b);

/// [A, B] = AB - BA. Only overlapping anticommuting pairs contribute.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Z ~ log(e^A e^B) for anti-Hermitian generators, truncated at max_order.
///
/// Homogeneous orders follow the Varadarajan recursion
///   (n+1) Z_{n+1} = 1/2 [A - B, Z_n]
///       + sum_p B_{2p}/(2p)! sum_{k_1+..+k_{2p}=n} [Z_{k_1},[..,[Z_{k_{2p}}, A+B]..]]
/// and the series stops early once two consecutive orders have 2-norm below
/// the threshold. Throws kNonConvergence if order max_order is still above it.
PauliSum bch_log_product(const PauliSum& a, const PauliSum& b, int max_order = 6,
                         double threshold = kDefaultPruneThreshold);

/// Left fold of bch_log_product over a sequence of generators.
PauliSum bch_log_product(std::span<const PauliSum> generators,
                         int max_order = 6,
                         double threshold = kDefaultPruneThreshold);

inline constexpr int kDefaultDenseLimit = 14;

/// Dense 2^n x 2^n matrix; site k is bit k of the basis index.
Eigen::MatrixXcd to_dense(const PauliSum& a, int n_sites,
                          int dense_limit = kDefaultDenseLimit);

/// Pauli decomposition c = tr(P H) / 2^n over all 4^n strings (n <= 6).
PauliSum from_dense(const Eigen::MatrixXcd& h, int n_sites,
                    double threshold = 0.0);

using WeightSpectrum =
    std::map<std::size_t, std::vector<std::pair<PauliString, double>>>;

/// Groups terms by weight, each group sorted by descending magnitude.
WeightSpectrum weight_spectrum(const PauliSum& a);

}  // namespace floquet_toric
