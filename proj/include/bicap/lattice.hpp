#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// The lattice Q(N) = {(A,B) : A,B subsets of N, A and B disjoint}, ordered by
// (A,B) <= (C,D) iff A is a subset of C and B is a superset of D.  Q(N) is a
// distributive lattice isomorphic to the n-fold product of the chain
// {-1 < 0 < 1}; all dense storage uses the canonical ternary coding of that
// product (digit of player i at ternary place i-1; -1 -> 0, 0 -> 1, 1 -> 2).

namespace bicap {

// Player counts are capped so ternary indices stay addressable in 64 bits.
// The default cap can be raised or lowered via the BICAP_MAX_N environment
// variable (read once per process).
inline constexpr int kAbsoluteMaxPlayers = 40;
inline constexpr int kDefaultMaxPlayers = 20;
// Dense 3^n allocations past this player count emit a one-time warning.
inline constexpr int kDenseWarnPlayers = 12;

/// Effective player-count cap (BICAP_MAX_N override, else 20).
int max_players();

/// Throws std::domain_error unless 1 <= n <= max_players().
void require_player_count(int n);

/// 3^n.
std::uint64_t pow3(int n);

/// A subset of N = {1,...,n}; player i occupies bit i-1 of the mask.
struct PlayerSet {
  std::uint64_t mask = 0;
  int n = 0;

  PlayerSet() = default;
  PlayerSet(std::uint64_t mask, int n);  // throws if mask has bits above n

  static PlayerSet none(int n) { return {0, n}; }
  static PlayerSet all(int n);
  static PlayerSet single(int player, int n);
  static PlayerSet of(std::initializer_list<int> players, int n);

  bool contains(int player) const {
    return player >= 1 && player <= n && ((mask >> (player - 1)) & 1u) != 0;
  }
  int size() const;
  bool is_empty() const { return mask == 0; }
  bool is_full() const;
  PlayerSet complement() const;
  std::vector<int> players() const;  // ascending, 1-based

  friend bool operator==(const PlayerSet&, const PlayerSet&) = default;
};

// Set algebra; all binary operations require both operands to share n.
PlayerSet operator|(const PlayerSet& a, const PlayerSet& b);
PlayerSet operator&(const PlayerSet& a, const PlayerSet& b);
PlayerSet operator-(const PlayerSet& a, const PlayerSet& b);
bool is_subset(const PlayerSet& a, const PlayerSet& b);
bool are_disjoint(const PlayerSet& a, const PlayerSet& b);

/// "1,3" style text form; the empty set renders as "".
std::string to_string(const PlayerSet& s);
PlayerSet parse_player_set(std::string_view text, int n);

/// One point (A,B) of Q(N): A the positive (defender) side, B the negative
/// (defeater) side.  Overlapping sides are rejected at construction.
class BiSet {
 public:
  BiSet(PlayerSet pos, PlayerSet neg);

  static BiSet bottom(int n);  // (empty, N)
  static BiSet top(int n);     // (N, empty)

  const PlayerSet& pos() const { return pos_; }
  const PlayerSet& neg() const { return neg_; }
  int n() const { return pos_.n; }
  PlayerSet neutral() const;  // N minus (pos union neg)

  friend bool operator==(const BiSet&, const BiSet&) = default;

 private:
  PlayerSet pos_;
  PlayerSet neg_;
};

/// Position of a BiSet in the canonical ternary enumeration of Q(N).
struct TernaryIndex {
  std::uint64_t value = 0;
  friend bool operator==(const TernaryIndex&, const TernaryIndex&) = default;
};

// Raw mask-level coding used by the dense transforms; BiSet wraps these.
struct MaskPair {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};
MaskPair decode_masks(std::uint64_t tidx, int n);
std::uint64_t encode_masks(std::uint64_t pos, std::uint64_t neg, int n);
int ternary_digit(std::uint64_t tidx, int place);  // place is 0-based

TernaryIndex to_index(const BiSet& x);
BiSet from_index(TernaryIndex idx, int n);

/// All 3^n elements of Q(N) in ternary-index order; index 0 is the bottom
/// (empty, N), index 3^n - 1 is the top (N, empty).
std::vector<BiSet> enumerate_q(int n);

/// Lattice order and operations.
bool leq(const BiSet& x, const BiSet& y);
BiSet sup(const BiSet& x, const BiSet& y);  // (A u C, B n D)
BiSet inf(const BiSet& x, const BiSet& y);  // (A n C, B u D)

// The alternative operations of Bilbao et al.; (Q(N), bilbao_sup, bilbao_inf)
// fails to be a lattice, which the tests demonstrate.
BiSet bilbao_sup(const BiSet& x, const BiSet& y);
BiSet bilbao_inf(const BiSet& x, const BiSet& y);

/// The 2n join-irreducible elements: (empty, i^c) for each i (negative
/// singletons), then (i, i^c) (positive singletons), ascending i.
std::vector<BiSet> join_irreducibles(int n);

/// All join-irreducibles below x: {(i,i^c) : i in A} u {(empty,j^c) : j not
/// in B}.
std::vector<BiSet> normal_decomposition(const BiSet& x);
/// Minimal decomposition: {(i,i^c) : i in A} u {(empty,j^c) : j neutral}.
std::vector<BiSet> irredundant_decomposition(const BiSet& x);

/// Layer index n - |B|; the bottom sits in layer 0, join-irreducibles in
/// layer 1, the top in layer n.
int layer(const BiSet& x);

/// An interval [lo, hi] is a sublattice of type 2^k x 3^l.
struct IntervalType {
  int k = 0;
  int l = 0;
  std::uint64_t size = 1;  // 2^k * 3^l
};
IntervalType classify_interval(const BiSet& lo, const BiSet& hi);
/// Elements of [lo, hi] in ascending ternary-index order.
std::vector<BiSet> interval(const BiSet& lo, const BiSet& hi);

// Conversions into the isomorphic lattices Q*(N) ((A,B) -> (A,B^c), product
// order) and Q**(N) ((A,B) -> (A,(A u B)^c)).  The images are generally not
// disjoint pairs, so plain set pairs are returned.
std::pair<PlayerSet, PlayerSet> to_qstar(const BiSet& x);
std::pair<PlayerSet, PlayerSet> to_qstarstar(const BiSet& x);
bool leq_qstar(const std::pair<PlayerSet, PlayerSet>& a,
               const std::pair<PlayerSet, PlayerSet>& b);

/// True iff pos u neg = N (the "geometrical" vertices of Q(N)).
bool is_vertex(const BiSet& x);

/// "A|B" text form, each side "1,3"-style ascending; "|" is (empty, empty).
std::string to_string(const BiSet& x);
BiSet parse_biset(std::string_view text, int n);

std::ostream& operator<<(std::ostream& os, const BiSet& x);
std::ostream& operator<<(std::ostream& os, const PlayerSet& s);

}  // namespace bicap
