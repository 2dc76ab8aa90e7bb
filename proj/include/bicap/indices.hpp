#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bicap/derivative.hpp"
#include "bicap/game.hpp"
#include "bicap/lattice.hpp"
#include "bicap/moebius.hpp"
#include "bicap/rational.hpp"

namespace bicap {

// Every factorial coefficient below is built in exact rational arithmetic and
// converted to floating point once per (size, count) pair; the sums accumulate
// in extended precision.

/// (n-s-1)! s! / n!
Rational shapley_coefficient(int n, int s);
/// (n-t-s)! t! / (n-s+1)!
Rational interaction_coefficient(int n, int s, int t);
/// (n-s-t-k)! k! / (n-s-t+1)!
Rational bi_interaction_coefficient(int n, int s, int t, int k);
/// (t-k)! k! / (t+1)!  (lattice-point form)
Rational point_interaction_coefficient(int t, int k);

/// Left side of the combinatorial identity
///   sum_{i=0}^k (n-i-1)! k! / (n! (k-i)!) = 1/(n-k),
/// evaluated exactly; 0 <= k < n.
Rational comb_lemma(int n, int k);

// ---------------------------------------------------------------------------
// Classical indices

/// phi_i = sum_{S subset N\i} (n-s-1)!s!/n! (nu(S u i) - nu(S)).
std::vector<double> shapley_classical(const Capacity& nu);

/// I(S) = sum_{T subset N\S} (n-t-s)!t!/(n-s+1)! Delta_S nu(T).
double interaction_classical(const Capacity& nu, const PlayerSet& s);
/// Same index through the Moebius transform: sum_{T containing S} m(T)/(t-s+1).
double interaction_classical_moebius(const Capacity& nu, const PlayerSet& s);

// ---------------------------------------------------------------------------
// Bi-cooperative Shapley value

/// Theorem form:
///   phi_{i,0} = sum_S (n-s-1)!s!/n! [v(S u i, N\(S u i)) - v(S, N\(S u i))]
///   phi_{0,i} = sum_S (n-s-1)!s!/n! [v(S, N\(S u i)) - v(S, N\S)].
BiShapley shapley_bi(const BiGame& v);

/// Moebius form:
///   phi_{i,0} = sum over (S,T) with i in S of m(S,T)/(n-t)
///   phi_{0,i} = sum over (S,T) with i outside S u T of m(S,T)/(n-t).
BiShapley shapley_bi_moebius(const MoebiusRep& m);

// ---------------------------------------------------------------------------
// Bi-interaction index

/// Closed form in defender/defeater notation ((S,T) = (empty,empty) allowed):
///   I_{S,T} = sum_{K subset N\(S u T)} (n-s-t-k)!k!/(n-s-t+1)!
///             Delta_{S,T} v(K, N\(K u S)).
double interaction_bi(const BiGame& v, const PlayerSet& s, const PlayerSet& t);

/// Same index in lattice-point notation, I(A,B) = I_{A, N\(A u B)}:
///   I(A,B) = sum_{K subset B} (b-k)!k!/(b+1)! Delta_{(A,B)} v(K, N\(K u A)).
double interaction_bi_point(const BiGame& v, const BiSet& point);

/// Moebius form: sum of m over [(S, N\(S u T)), (N\T, empty)] weighted by
/// 1/(n-s-t-t'+1).
double interaction_bi_moebius(const MoebiusRep& m, const PlayerSet& s,
                              const PlayerSet& t);

/// The full interaction operator: one value per element of Q(N), exposed in
/// both notations through pair()/point().  Built from the Moebius transform
/// with per-digit passes, O(n^2 3^n) total, instead of 3^n derivative sums.
class InteractionRep {
 public:
  InteractionRep(int n, std::vector<double> by_point_index);

  int n() const { return n_; }
  std::uint64_t size() const { return values_.size(); }
  /// I(A,B), lattice-point notation.
  double point(const BiSet& p) const;
  double point_by_index(std::uint64_t tidx) const { return values_[tidx]; }
  /// I_{S,T}, defender/defeater notation.
  double pair(const PlayerSet& s, const PlayerSet& t) const;

 private:
  int n_;
  std::vector<double> values_;  // indexed by ternary index of the point (A,B)
};

InteractionRep interaction_table(const MoebiusRep& m);

// ---------------------------------------------------------------------------
// Reduced and restricted games

/// Game where the coalition K acts as one merged player.  Reduced players
/// 1..n-|K| are the members of N\K in ascending original order; the merged
/// player [K] is the last one.
struct ReducedGame {
  BiGame game;                   // on n-|K|+1 players
  PlayerSet merged;              // K in the original labeling
  int merged_player = 0;         // index of [K] in the reduced labeling
  std::vector<int> original_of;  // original label per reduced player; 0 = [K]
};
ReducedGame reduced_game(const BiGame& v, const PlayerSet& k);

/// Restriction to N\K with K neutral: v0(S,T) = v(S,T).
BiGame restricted_zero(const BiGame& v, const PlayerSet& k);
/// Restriction to N\K with K forced defeater: v-(S,T) = v(S, T u K).
/// The result generally has v(empty,empty) != 0; it is used as an
/// unconstrained function on Q(N\K), not validated as a game.
BiGame restricted_minus(const BiGame& v, const PlayerSet& k);

/// Evaluates both sides of the applicable recursion formulas
///   I_{S,T} = I^{v_[S]}_{[S],T} - sum_{empty != K proper subset S}
///             I^{v0^{N\K}}_{S\K, T}                         (S nonempty)
///   I_{S,T} = I^{v_[T]}_{S,[T]} - sum_{empty != K proper subset T}
///             I^{v-^{N\K}}_{S, T\K}                         (T nonempty)
/// and reports the residuals.
struct RecursionReport {
  double direct = 0.0;
  std::optional<double> via_merge_defenders;  // right side of the S-recursion
  std::optional<double> via_merge_defeaters;  // right side of the T-recursion
  double max_residual() const;
};
RecursionReport recursion_check(const BiGame& v, const PlayerSet& s,
                                const PlayerSet& t);

}  // namespace bicap
