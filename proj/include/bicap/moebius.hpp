#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bicap/game.hpp"
#include "bicap/lattice.hpp"

namespace bicap {

// The direct transforms enumerate full sublattices per element and are kept
// as reference paths; above this player count they refuse to run unless
// explicitly forced, and the O(n 3^n) per-digit passes must be used.
inline constexpr int kDirectTransformMaxN = 5;
// Dense transform matrices are capped at 3^8 rows.
inline constexpr int kMatrixMaxN = 8;

/// Coefficients below this magnitude count as zero when scanning Moebius
/// support (k-additivity, sparse listings).
inline constexpr double kMoebiusZeroTol = 1e-9;

/// Moebius coefficients m(A,B) of a bi-game, dense in ternary-index order.
class MoebiusRep {
 public:
  explicit MoebiusRep(int n);
  MoebiusRep(int n, std::vector<double> coeffs);

  int n() const { return n_; }
  std::uint64_t size() const { return coeffs_.size(); }
  double operator[](std::uint64_t tidx) const { return coeffs_[tidx]; }
  double& operator[](std::uint64_t tidx) { return coeffs_[tidx]; }
  double at(const BiSet& x) const;
  double& at(const BiSet& x);
  std::span<const double> coeffs() const { return coeffs_; }

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// Sparse summary: nonzero coefficients in ascending ternary-index order.
std::vector<std::pair<BiSet, double>> nonzero_entries(
    const MoebiusRep& m, double tol = kMoebiusZeroTol);

/// Moebius function of the lattice Q(N): (-1)^{|B\A| + |A'\B'|} when
/// (A,A') <= (B,B') and A' does not meet B, else 0.
int mu(const BiSet& x, const BiSet& y);

/// Direct Moebius transform
///   m(A,A') = sum_{B subset A, A' subset B' subset A^c}
///             (-1)^{|A\B| + |B'\A'|} v(B,B').
/// Reference path; throws std::domain_error for n > 5 unless allow_large.
MoebiusRep moebius(const BiGame& v, bool allow_large = false);

/// Direct zeta transform v(A,A') = sum_{(B,B') <= (A,A')} m(B,B'); inverse of
/// moebius().  Same size gate as moebius().
BiGame zeta(const MoebiusRep& m, bool allow_large = false);

/// Dense transform matrix in ternary-index order: entry(y, x) = mu(x, y), so
/// that m = T v as a matrix product.  Equals the n-fold tensor power of the
/// 3x3 generating element
///     [  1  0  0 ]
///     [ -1  1  0 ]
///     [  0 -1  1 ]
/// and is lower triangular.  Materialization is capped at n <= 8.
class TransformMatrix {
 public:
  explicit TransformMatrix(int n);

  int n() const { return n_; }
  std::uint64_t dim() const { return dim_; }
  int entry(std::uint64_t row, std::uint64_t col) const {
    return entries_[row * dim_ + col];
  }
  std::vector<double> apply(std::span<const double> vec) const;

 private:
  int n_;
  std::uint64_t dim_;
  std::vector<std::int8_t> entries_;
};

inline TransformMatrix transform_matrix(int n) { return TransformMatrix(n); }

/// Per-digit Moebius transform: n passes, each applying the generating
/// element along one ternary digit (digit 1 to n ascending).  O(n 3^n);
/// agrees with moebius() on every input.
MoebiusRep fast_moebius(const BiGame& v);
/// Per-digit zeta transform (inverse passes, same order).
BiGame fast_zeta(const MoebiusRep& m);

/// Smallest k such that m(A,B) = 0 (within tol) whenever |B| < n-k, i.e. the
/// highest lattice layer carrying support.  1 characterizes additive games;
/// 0 means the support is confined to the bottom layer.
int k_additivity(const MoebiusRep& m, double tol = kMoebiusZeroTol);

/// Closed-form Moebius transform of the CPT game nu1(A) - nu2(B):
///   m(A,A^c) = m^{nu1}(A) for A nonempty,
///   m(empty,B) = m^{conj(nu2)}(B^c) for B proper,
///   m(empty,N) = -1, zero elsewhere.
/// Requires normalized capacities.
MoebiusRep moebius_cpt(const Capacity& nu1, const Capacity& nu2);

/// Classical subset-lattice transforms (dense over bitmasks).
std::vector<double> classical_moebius(const Capacity& nu);
Capacity classical_zeta(std::span<const double> m, int n);
/// Co-Moebius transform: mcheck(A) = sum_{B covering A^c} (-1)^{|N\B|} nu(B).
std::vector<double> co_moebius(const Capacity& nu);

}  // namespace bicap
