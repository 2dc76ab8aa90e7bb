#include "bicap/lattice.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bicap {

int max_players() {
  static const int cached = [] {
    const char* env = std::getenv("BICAP_MAX_N");
    if (env == nullptr || *env == '\0') return kDefaultMaxPlayers;
    char* end = nullptr;
    long val = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || val < 1) return kDefaultMaxPlayers;
    return static_cast<int>(std::min<long>(val, kAbsoluteMaxPlayers));
  }();
  return cached;
}

void require_player_count(int n) {
  if (n < 1 || n > max_players())
    throw std::domain_error("player count n=" + std::to_string(n) +
                            " outside [1, " + std::to_string(max_players()) +
                            "]");
}

std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

// ---------------------------------------------------------------------------
// PlayerSet

PlayerSet::PlayerSet(std::uint64_t mask, int n) : mask(mask), n(n) {
  require_player_count(n);
  if (n < 64 && (mask >> n) != 0)
    throw std::invalid_argument("player mask has bits above player " +
                                std::to_string(n));
}

PlayerSet PlayerSet::all(int n) {
  require_player_count(n);
  return {(std::uint64_t{1} << n) - 1, n};
}

PlayerSet PlayerSet::single(int player, int n) {
  require_player_count(n);
  if (player < 1 || player > n)
    throw std::invalid_argument("player " + std::to_string(player) +
                                " outside 1.." + std::to_string(n));
  return {std::uint64_t{1} << (player - 1), n};
}

PlayerSet PlayerSet::of(std::initializer_list<int> players, int n) {
  PlayerSet s = PlayerSet::none(n);
  for (int p : players) s = s | PlayerSet::single(p, n);
  return s;
}

int PlayerSet::size() const { return std::popcount(mask); }

bool PlayerSet::is_full() const {
  return mask == (std::uint64_t{1} << n) - 1;
}

PlayerSet PlayerSet::complement() const {
  return {~mask & ((std::uint64_t{1} << n) - 1), n};
}

std::vector<int> PlayerSet::players() const {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

namespace {
void require_same_n(int a, int b) {
  if (a != b)
    throw std::domain_error("player counts differ: " + std::to_string(a) +
                            " vs " + std::to_string(b));
}
}  // namespace

PlayerSet operator|(const PlayerSet& a, const PlayerSet& b) {
  require_same_n(a.n, b.n);
  return {a.mask | b.mask, a.n};
}
PlayerSet operator&(const PlayerSet& a, const PlayerSet& b) {
  require_same_n(a.n, b.n);
  return {a.mask & b.mask, a.n};
}
PlayerSet operator-(const PlayerSet& a, const PlayerSet& b) {
  require_same_n(a.n, b.n);
  return {a.mask & ~b.mask, a.n};
}
bool is_subset(const PlayerSet& a, const PlayerSet& b) {
  require_same_n(a.n, b.n);
  return (a.mask & ~b.mask) == 0;
}
bool are_disjoint(const PlayerSet& a, const PlayerSet& b) {
  require_same_n(a.n, b.n);
  return (a.mask & b.mask) == 0;
}

std::string to_string(const PlayerSet& s) {
  std::string out;
  for (int i = 1; i <= s.n; ++i) {
    if (!s.contains(i)) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

PlayerSet parse_player_set(std::string_view text, int n) {
  PlayerSet s = PlayerSet::none(n);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    int player = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), player);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("bad player token '" + std::string(token) +
                                  "'");
    if (player < 1 || player > n)
      throw std::invalid_argument("player " + std::to_string(player) +
                                  " outside 1.." + std::to_string(n));
    if (s.contains(player))
      throw std::invalid_argument("duplicate player " +
                                  std::to_string(player));
    s.mask |= std::uint64_t{1} << (player - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size())
      throw std::invalid_argument("trailing comma in player list");
  }
  return s;
}

// ---------------------------------------------------------------------------
// BiSet and the ternary coding

BiSet::BiSet(PlayerSet pos, PlayerSet neg)
    : pos_(std::move(pos)), neg_(std::move(neg)) {
  require_same_n(pos_.n, neg_.n);
  if ((pos_.mask & neg_.mask) != 0)
    throw std::invalid_argument("BiSet sides overlap: pos=" +
                                to_string(pos_) + " neg=" + to_string(neg_));
}

BiSet BiSet::bottom(int n) { return {PlayerSet::none(n), PlayerSet::all(n)}; }
BiSet BiSet::top(int n) { return {PlayerSet::all(n), PlayerSet::none(n)}; }

PlayerSet BiSet::neutral() const { return (pos_ | neg_).complement(); }

MaskPair decode_masks(std::uint64_t tidx, int n) {
  MaskPair mp;
  for (int i = 0; i < n; ++i) {
    int d = static_cast<int>(tidx % 3);
    tidx /= 3;
    if (d == 0)
      mp.neg |= std::uint64_t{1} << i;
    else if (d == 2)
      mp.pos |= std::uint64_t{1} << i;
  }
  return mp;
}

std::uint64_t encode_masks(std::uint64_t pos, std::uint64_t neg, int n) {
  std::uint64_t idx = 0;
  std::uint64_t place = 1;
  for (int i = 0; i < n; ++i, place *= 3) {
    std::uint64_t bit = std::uint64_t{1} << i;
    if (pos & bit)
      idx += 2 * place;
    else if (!(neg & bit))
      idx += place;
  }
  return idx;
}

int ternary_digit(std::uint64_t tidx, int place) {
  for (int i = 0; i < place; ++i) tidx /= 3;
  return static_cast<int>(tidx % 3);
}

TernaryIndex to_index(const BiSet& x) {
  return {encode_masks(x.pos().mask, x.neg().mask, x.n())};
}

BiSet from_index(TernaryIndex idx, int n) {
  require_player_count(n);
  if (idx.value >= pow3(n))
    throw std::domain_error("ternary index " + std::to_string(idx.value) +
                            " out of range for n=" + std::to_string(n));
  MaskPair mp = decode_masks(idx.value, n);
  return {PlayerSet{mp.pos, n}, PlayerSet{mp.neg, n}};
}

std::vector<BiSet> enumerate_q(int n) {
  require_player_count(n);
  std::uint64_t size = pow3(n);
  std::vector<BiSet> out;
  out.reserve(size);
  for (std::uint64_t idx = 0; idx < size; ++idx)
    out.push_back(from_index({idx}, n));
  return out;
}

bool leq(const BiSet& x, const BiSet& y) {
  require_same_n(x.n(), y.n());
  return is_subset(x.pos(), y.pos()) && is_subset(y.neg(), x.neg());
}

BiSet sup(const BiSet& x, const BiSet& y) {
  return {x.pos() | y.pos(), x.neg() & y.neg()};
}

BiSet inf(const BiSet& x, const BiSet& y) {
  return {x.pos() & y.pos(), x.neg() | y.neg()};
}

BiSet bilbao_sup(const BiSet& x, const BiSet& y) {
  PlayerSet pos_union = x.pos() | y.pos();
  PlayerSet neg_union = x.neg() | y.neg();
  return {pos_union - neg_union, neg_union - pos_union};
}

BiSet bilbao_inf(const BiSet& x, const BiSet& y) {
  return {x.pos() & y.pos(), x.neg() & y.neg()};
}

std::vector<BiSet> join_irreducibles(int n) {
  require_player_count(n);
  std::vector<BiSet> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    out.emplace_back(PlayerSet::none(n), PlayerSet::single(i, n).complement());
  for (int i = 1; i <= n; ++i)
    out.emplace_back(PlayerSet::single(i, n),
                     PlayerSet::single(i, n).complement());
  return out;
}

std::vector<BiSet> normal_decomposition(const BiSet& x) {
  int n = x.n();
  std::vector<BiSet> out;
  for (int j = 1; j <= n; ++j)
    if (!x.neg().contains(j))
      out.emplace_back(PlayerSet::none(n),
                       PlayerSet::single(j, n).complement());
  for (int i = 1; i <= n; ++i)
    if (x.pos().contains(i))
      out.emplace_back(PlayerSet::single(i, n),
                       PlayerSet::single(i, n).complement());
  return out;
}

std::vector<BiSet> irredundant_decomposition(const BiSet& x) {
  int n = x.n();
  PlayerSet neutral = x.neutral();
  std::vector<BiSet> out;
  for (int j = 1; j <= n; ++j)
    if (neutral.contains(j))
      out.emplace_back(PlayerSet::none(n),
                       PlayerSet::single(j, n).complement());
  for (int i = 1; i <= n; ++i)
    if (x.pos().contains(i))
      out.emplace_back(PlayerSet::single(i, n),
                       PlayerSet::single(i, n).complement());
  return out;
}

int layer(const BiSet& x) { return x.n() - x.neg().size(); }

IntervalType classify_interval(const BiSet& lo, const BiSet& hi) {
  if (!leq(lo, hi))
    throw std::domain_error("interval bounds not ordered: " + to_string(lo) +
                            " is not below " + to_string(hi));
  // Writing hi = (A u D, B \ C) relative to lo = (A, B):
  PlayerSet c = lo.neg() - hi.neg();
  PlayerSet d = hi.pos() - lo.pos();
  IntervalType t;
  t.k = std::popcount(c.mask ^ d.mask);
  t.l = std::popcount(c.mask & d.mask);
  t.size = (std::uint64_t{1} << t.k) * pow3(t.l);
  return t;
}

std::vector<BiSet> interval(const BiSet& lo, const BiSet& hi) {
  IntervalType type = classify_interval(lo, hi);
  int n = lo.n();
  std::uint64_t lo_idx = to_index(lo).value;
  // Mixed-radix odometer over the per-player digit ranges [lo_i, hi_i];
  // the product order makes every combination a member of the interval.
  std::vector<int> low(n), high(n), cur(n);
  {
    std::uint64_t li = lo_idx, hi_val = to_index(hi).value;
    for (int i = 0; i < n; ++i) {
      low[i] = static_cast<int>(li % 3);
      high[i] = static_cast<int>(hi_val % 3);
      li /= 3;
      hi_val /= 3;
      cur[i] = low[i];
    }
  }
  std::vector<BiSet> out;
  out.reserve(type.size);
  std::uint64_t idx = lo_idx;
  while (true) {
    out.push_back(from_index({idx}, n));
    int p = 0;
    std::uint64_t place = 1;
    while (p < n && cur[p] == high[p]) {
      idx -= static_cast<std::uint64_t>(cur[p] - low[p]) * place;
      cur[p] = low[p];
      place *= 3;
      ++p;
    }
    if (p == n) break;
    ++cur[p];
    idx += place;
  }
  return out;
}

std::pair<PlayerSet, PlayerSet> to_qstar(const BiSet& x) {
  return {x.pos(), x.neg().complement()};
}

std::pair<PlayerSet, PlayerSet> to_qstarstar(const BiSet& x) {
  return {x.pos(), (x.pos() | x.neg()).complement()};
}

bool leq_qstar(const std::pair<PlayerSet, PlayerSet>& a,
               const std::pair<PlayerSet, PlayerSet>& b) {
  return is_subset(a.first, b.first) && is_subset(a.second, b.second);
}

bool is_vertex(const BiSet& x) { return (x.pos() | x.neg()).is_full(); }

std::string to_string(const BiSet& x) {
  return to_string(x.pos()) + "|" + to_string(x.neg());
}

BiSet parse_biset(std::string_view text, int n) {
  std::size_t bar = text.find('|');
  if (bar == std::string_view::npos)
    throw std::invalid_argument("missing '|' in \"" + std::string(text) +
                                "\"");
  if (text.find('|', bar + 1) != std::string_view::npos)
    throw std::invalid_argument("more than one '|' in \"" + std::string(text) +
                                "\"");
  PlayerSet pos = parse_player_set(text.substr(0, bar), n);
  PlayerSet neg = parse_player_set(text.substr(bar + 1), n);
  return {pos, neg};  // overlap rejected by the BiSet constructor
}

std::ostream& operator<<(std::ostream& os, const BiSet& x) {
  return os << to_string(x);
}
std::ostream& operator<<(std::ostream& os, const PlayerSet& s) {
  return os << to_string(s);
}

}  // namespace bicap
