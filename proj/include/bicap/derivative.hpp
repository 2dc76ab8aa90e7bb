#pragma once

#include <cstdint>

#include "bicap/game.hpp"
#include "bicap/lattice.hpp"
#include "bicap/moebius.hpp"

namespace bicap {

/// The (S,T)-derivative direction: S joins the defender side, T leaves the
/// defeater side.  The same direction in lattice-point notation is the
/// element (S, N\(S u T)) of Q(N); the two views are bridged by point() and
/// at_point().
class DerivativeSpec {
 public:
  DerivativeSpec(PlayerSet s, PlayerSet t);  // throws if S and T overlap

  /// Direction written as a lattice point: Delta_{(A,B)} == Delta_{A,N\(AuB)}.
  static DerivativeSpec at_point(const BiSet& st);

  const PlayerSet& s_set() const { return s_; }
  const PlayerSet& t_set() const { return t_; }
  int n() const { return s_.n; }
  BiSet point() const;  // (S, N\(S u T))

 private:
  PlayerSet s_;
  PlayerSet t_;
};

/// v(S u i, T) - v(S, T); requires i outside S u T.
double delta_left(const BiGame& v, int i, const BiSet& at);
/// v(S, T\i) - v(S, T); requires i in T.
double delta_right(const BiGame& v, int i, const BiSet& at);

/// Closed-form (S,T)-derivative at (K,L):
///   sum_{S' subset S, T' subset T} (-1)^{(s-s')+(t-t')} v(K u S', L \ T').
/// Requires (K,L) in Q(N\S) and L containing T (violations are errors, not
/// silently clamped: the interaction formulas rely on exactly these domains).
/// Delta_{empty,empty} v = v.
double delta(const BiGame& v, const DerivativeSpec& spec, const BiSet& at);

/// Same derivative evaluated from Moebius coefficients: the sum of m over the
/// interval [(S, N\(S u T)), (S u K, L\T)].
double delta_from_moebius(const MoebiusRep& m, const DerivativeSpec& spec,
                          const BiSet& at);

/// Recovers every Moebius coefficient as a derivative:
/// m(S,T) = Delta_{(S,T)} v(empty, N\S).  Same size gate as moebius().
MoebiusRep moebius_via_derivative(const BiGame& v, bool allow_large = false);

/// Classical S-derivative at T: sum_{L subset S} (-1)^{s-l} nu(L u T);
/// requires T inside N\S.
double classical_delta(const Capacity& nu, const PlayerSet& s,
                       const PlayerSet& t);

namespace detail {
/// The alternating sum above on raw masks, no validation.
double delta_unchecked(const BiGame& v, std::uint64_t s_mask,
                       std::uint64_t t_mask, std::uint64_t k_mask,
                       std::uint64_t l_mask);
}  // namespace detail

}  // namespace bicap
