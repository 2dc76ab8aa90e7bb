#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bicap/lattice.hpp"

namespace bicap {

/// A classical game/capacity on 2^N: a dense array of 2^n reals indexed by
/// coalition bitmask.  The is_capacity / is_normalized flags are advisory
/// (set by the constructors that guarantee them); validate() recomputes the
/// facts from the values.
class Capacity {
 public:
  explicit Capacity(int n);
  Capacity(int n, std::vector<double> values);

  int n() const { return n_; }
  std::uint64_t size() const { return values_.size(); }
  double operator[](std::uint64_t mask) const { return values_[mask]; }
  double& operator[](std::uint64_t mask) { return values_[mask]; }
  double at(const PlayerSet& s) const;
  std::span<const double> values() const { return values_; }

  bool is_capacity = false;
  bool is_normalized = false;

 private:
  int n_;
  std::vector<double> values_;
};

/// A bi-cooperative game: a dense array of 3^n reals over Q(N) in
/// ternary-index order.  Arbitrary real-valued functions on Q(N) are
/// representable; validate() reports whether the values actually form a game
/// (v(empty,empty) = 0), a bi-capacity (monotone), and a normalized one.
class BiGame {
 public:
  explicit BiGame(int n);
  BiGame(int n, std::vector<double> values);

  int n() const { return n_; }
  std::uint64_t size() const { return values_.size(); }
  double operator[](std::uint64_t tidx) const { return values_[tidx]; }
  double& operator[](std::uint64_t tidx) { return values_[tidx]; }
  double at(const BiSet& x) const;
  double& at(const BiSet& x);
  std::span<const double> values() const { return values_; }

  std::uint64_t origin_index() const;  // ternary index of (empty, empty)
  std::uint64_t top_index() const { return values_.size() - 1; }

  bool is_capacity = false;
  bool is_normalized = false;

 private:
  int n_;
  std::vector<double> values_;
};

/// Left/right Shapley coordinates: left[i-1] is the value for player i
/// joining the defender side, right[i-1] for leaving the defeater side.
struct BiShapley {
  std::vector<double> left;
  std::vector<double> right;
};

/// Monotonicity is checked over all covering pairs of (Q(N), <=), which
/// suffices on a finite lattice; comparisons carry an absolute tolerance for
/// floating-point inputs.
inline constexpr double kMonotoneTol = 1e-12;

struct ValidationReport {
  bool is_game = false;        // v(empty,empty) = 0
  bool is_bicapacity = false;  // game + monotone
  bool is_normalized = false;  // v(N,empty) = 1 and v(empty,N) = -1
  double origin_value = 0.0;
  std::uint64_t violation_count = 0;             // monotonicity violations
  std::vector<std::pair<BiSet, BiSet>> violations;  // first 1000, (lower, upper)
};
ValidationReport validate(const BiGame& v, double tol = kMonotoneTol);

struct CapacityReport {
  bool is_game = false;
  bool is_capacity = false;
  bool is_normalized = false;
  std::uint64_t violation_count = 0;
  std::vector<std::pair<PlayerSet, PlayerSet>> violations;
};
CapacityReport validate(const Capacity& nu, double tol = kMonotoneTol);

/// CPT-type game v(A,B) = nu1(A) - nu2(B).  Symmetric when nu1 = nu2,
/// asymmetric when nu2 = conjugate(nu1).
BiGame make_cpt(const Capacity& nu1, const Capacity& nu2);

/// Additive game v(A,B) = sum_{i in A} w1_i - sum_{i in B} w2_i.
BiGame make_additive(std::span<const double> w1, std::span<const double> w2);

/// Indicator of the up-set of `center`; the basis game u_{(S,S')}.  Centers
/// with an empty positive side give u(empty,empty) = 1 and therefore fail the
/// game axiom; construction is still permitted.
BiGame bi_unanimity(const BiSet& center);

/// True iff every value lies in {-1, +1}; with exempt_origin the value at
/// (empty,empty) is skipped, since a game must carry 0 there.
bool ternary_voting_check(const BiGame& v, bool exempt_origin = true,
                          double tol = 1e-12);

/// Conjugate capacity conj(A) = 1 - nu(N\A); requires nu normalized.
Capacity conjugate(const Capacity& nu);

/// Unanimity game u_B(A) = 1 iff A contains B.  u_empty is not a game.
Capacity unanimity(const PlayerSet& b);

enum class EmbedMode {
  defender_only,  // v(S,T) = nu(S)
  defeater_only,  // v(S,T) = nu(N\T)
};
/// Embeds a classical game as a bi-game that ignores one argument.
BiGame embed_capacity(const Capacity& nu, EmbedMode mode);

}  // namespace bicap
