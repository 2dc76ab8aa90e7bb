#include "bicap/indices.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bicap {

namespace {

void require_range(bool ok, const char* what) {
  if (!ok) throw std::domain_error(std::string(what) + ": argument out of range");
}

void require_disjoint_pair(const PlayerSet& s, const PlayerSet& t,
                           const char* what) {
  if (s.n != t.n)
    throw std::domain_error(std::string(what) + ": player counts differ");
  if ((s.mask & t.mask) != 0)
    throw std::domain_error(std::string(what) + ": S and T overlap");
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact coefficients

Rational shapley_coefficient(int n, int s) {
  require_range(n >= 1 && s >= 0 && s <= n - 1, "shapley_coefficient");
  return Rational(1, static_cast<long long>(n) * binomial_exact(n - 1, s));
}

Rational interaction_coefficient(int n, int s, int t) {
  require_range(n >= 1 && s >= 0 && t >= 0 && s + t <= n,
                "interaction_coefficient");
  return Rational(1, static_cast<long long>(n - s + 1) *
                         binomial_exact(n - s, t));
}

Rational bi_interaction_coefficient(int n, int s, int t, int k) {
  require_range(n >= 1 && s >= 0 && t >= 0 && k >= 0 && s + t + k <= n,
                "bi_interaction_coefficient");
  return Rational(1, static_cast<long long>(n - s - t + 1) *
                         binomial_exact(n - s - t, k));
}

Rational point_interaction_coefficient(int t, int k) {
  require_range(t >= 0 && k >= 0 && k <= t, "point_interaction_coefficient");
  return Rational(1, static_cast<long long>(t + 1) * binomial_exact(t, k));
}

Rational comb_lemma(int n, int k) {
  require_range(n >= 1 && k >= 0 && k < n, "comb_lemma");
  // term_i = (n-i-1)! k! / (n! (k-i)!) = falling(k,i) / falling(n,i+1)
  Rational sum = 0;
  for (int i = 0; i <= k; ++i) {
    long long num = 1;
    for (int j = 0; j < i; ++j) num *= k - j;
    long long den = 1;
    for (int j = 0; j <= i; ++j) den *= n - j;
    sum += Rational(num, den);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Classical indices

std::vector<double> shapley_classical(const Capacity& nu) {
  const int n = nu.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<long double> coeff(n);
  for (int s = 0; s < n; ++s)
    coeff[s] = shapley_coefficient(n, s).to_long_double();
  std::vector<double> phi(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    long double acc = 0.0L;
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      if (mask & bit) continue;
      acc += coeff[std::popcount(mask)] * (nu[mask | bit] - nu[mask]);
    }
    phi[i] = static_cast<double>(acc);
  }
  return phi;
}

double interaction_classical(const Capacity& nu, const PlayerSet& s) {
  if (nu.n() != s.n)
    throw std::domain_error("interaction_classical: n mismatch");
  const int n = nu.n();
  const int s_size = s.size();
  const std::uint64_t rest = PlayerSet::all(n).mask & ~s.mask;
  std::vector<long double> coeff(n - s_size + 1);
  for (int t = 0; t <= n - s_size; ++t)
    coeff[t] = interaction_coefficient(n, s_size, t).to_long_double();
  long double acc = 0.0L;
  std::uint64_t t_mask = rest;
  while (true) {
    long double inner = 0.0L;  // Delta_S nu(T)
    std::uint64_t k = s.mask;
    while (true) {
      const double val = nu[k | t_mask];
      inner += (((s_size - std::popcount(k)) & 1) != 0) ? -val : val;
      if (k == 0) break;
      k = (k - 1) & s.mask;
    }
    acc += coeff[std::popcount(t_mask)] * inner;
    if (t_mask == 0) break;
    t_mask = (t_mask - 1) & rest;
  }
  return static_cast<double>(acc);
}

double interaction_classical_moebius(const Capacity& nu, const PlayerSet& s) {
  if (nu.n() != s.n)
    throw std::domain_error("interaction_classical_moebius: n mismatch");
  const std::vector<double> m = classical_moebius(nu);
  const std::uint64_t rest = PlayerSet::all(nu.n()).mask & ~s.mask;
  long double acc = 0.0L;
  std::uint64_t x = rest;
  while (true) {
    acc += m[s.mask | x] / static_cast<long double>(std::popcount(x) + 1);
    if (x == 0) break;
    x = (x - 1) & rest;
  }
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Bi-cooperative Shapley value

BiShapley shapley_bi(const BiGame& v) {
  const int n = v.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<long double> coeff(n);
  for (int s = 0; s < n; ++s)
    coeff[s] = shapley_coefficient(n, s).to_long_double();
  BiShapley out;
  out.left.assign(n, 0.0);
  out.right.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    long double left = 0.0L, right = 0.0L;
    for (std::uint64_t s_mask = 0; s_mask <= full; ++s_mask) {
      if (s_mask & bit) continue;
      const long double c = coeff[std::popcount(s_mask)];
      const std::uint64_t vert_neg = full & ~(s_mask | bit);  // N\(S u i)
      const double at_svi = v[encode_masks(s_mask, vert_neg, n)];
      left += c * (v[encode_masks(s_mask | bit, vert_neg, n)] - at_svi);
      right += c * (at_svi - v[encode_masks(s_mask, full & ~s_mask, n)]);
    }
    out.left[i] = static_cast<double>(left);
    out.right[i] = static_cast<double>(right);
  }
  return out;
}

BiShapley shapley_bi_moebius(const MoebiusRep& m) {
  const int n = m.n();
  std::vector<long double> left(n, 0.0L), right(n, 0.0L);
  for (std::uint64_t idx = 0; idx < m.size(); ++idx) {
    const double coeff_val = m[idx];
    if (coeff_val == 0.0) continue;
    const MaskPair mp = decode_masks(idx, n);
    const int t = std::popcount(mp.neg);
    if (t == n) continue;  // bottom layer touches no coordinate
    const long double w = coeff_val / static_cast<long double>(n - t);
    std::uint64_t s_bits = mp.pos;
    while (s_bits != 0) {
      left[std::countr_zero(s_bits)] += w;
      s_bits &= s_bits - 1;
    }
    std::uint64_t neutral =
        ((std::uint64_t{1} << n) - 1) & ~(mp.pos | mp.neg);
    while (neutral != 0) {
      right[std::countr_zero(neutral)] += w;
      neutral &= neutral - 1;
    }
  }
  BiShapley out;
  out.left.assign(left.begin(), left.end());
  out.right.assign(right.begin(), right.end());
  return out;
}

// ---------------------------------------------------------------------------
// Bi-interaction index

double interaction_bi(const BiGame& v, const PlayerSet& s,
                      const PlayerSet& t) {
  require_disjoint_pair(s, t, "interaction_bi");
  if (v.n() != s.n) throw std::domain_error("interaction_bi: n mismatch");
  const int n = v.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const int s_size = s.size(), t_size = t.size();
  const std::uint64_t rest = full & ~(s.mask | t.mask);
  std::vector<long double> coeff(n - s_size - t_size + 1);
  for (int k = 0; k <= n - s_size - t_size; ++k)
    coeff[k] = bi_interaction_coefficient(n, s_size, t_size, k)
                   .to_long_double();
  long double acc = 0.0L;
  std::uint64_t k_mask = rest;
  while (true) {
    acc += coeff[std::popcount(k_mask)] *
           detail::delta_unchecked(v, s.mask, t.mask, k_mask,
                                   full & ~(k_mask | s.mask));
    if (k_mask == 0) break;
    k_mask = (k_mask - 1) & rest;
  }
  return static_cast<double>(acc);
}

double interaction_bi_point(const BiGame& v, const BiSet& point) {
  if (v.n() != point.n())
    throw std::domain_error("interaction_bi_point: n mismatch");
  const int n = v.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::uint64_t a = point.pos().mask;
  const std::uint64_t b = point.neg().mask;
  const int b_size = std::popcount(b);
  const std::uint64_t t_mask = full & ~(a | b);  // lattice point -> direction
  std::vector<long double> coeff(b_size + 1);
  for (int k = 0; k <= b_size; ++k)
    coeff[k] = point_interaction_coefficient(b_size, k).to_long_double();
  long double acc = 0.0L;
  std::uint64_t k_mask = b;
  while (true) {
    acc += coeff[std::popcount(k_mask)] *
           detail::delta_unchecked(v, a, t_mask, k_mask, full & ~(k_mask | a));
    if (k_mask == 0) break;
    k_mask = (k_mask - 1) & b;
  }
  return static_cast<double>(acc);
}

double interaction_bi_moebius(const MoebiusRep& m, const PlayerSet& s,
                              const PlayerSet& t) {
  require_disjoint_pair(s, t, "interaction_bi_moebius");
  if (m.n() != s.n)
    throw std::domain_error("interaction_bi_moebius: n mismatch");
  const int n = m.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const int s_size = s.size(), t_size = t.size();
  // Interval [(S, N\(S u T)), (N\T, empty)]: S' = S u X with X neutral,
  // T' inside N\(S u T u X).
  const std::uint64_t rest = full & ~(s.mask | t.mask);
  long double acc = 0.0L;
  std::uint64_t x = rest;
  while (true) {
    const std::uint64_t sp = s.mask | x;
    const std::uint64_t free = rest & ~x;
    std::uint64_t tp = free;
    while (true) {
      acc += m[encode_masks(sp, tp, n)] /
             static_cast<long double>(n - s_size - t_size -
                                      std::popcount(tp) + 1);
      if (tp == 0) break;
      tp = (tp - 1) & free;
    }
    if (x == 0) break;
    x = (x - 1) & rest;
  }
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Whole-lattice interaction table

InteractionRep::InteractionRep(int n, std::vector<double> by_point_index)
    : n_(n), values_(std::move(by_point_index)) {
  require_player_count(n);
  if (values_.size() != pow3(n))
    throw std::invalid_argument("InteractionRep: array length mismatch");
}

double InteractionRep::point(const BiSet& p) const {
  if (p.n() != n_) throw std::domain_error("InteractionRep: n mismatch");
  return values_[to_index(p).value];
}

double InteractionRep::pair(const PlayerSet& s, const PlayerSet& t) const {
  require_disjoint_pair(s, t, "InteractionRep::pair");
  if (s.n != n_) throw std::domain_error("InteractionRep: n mismatch");
  return point(BiSet(s, (s | t).complement()));
}

InteractionRep interaction_table(const MoebiusRep& m) {
  // For each point (A,B), I(A,B) sums m over the interval [(A,B),(A u B,
  // empty)] weighted by 1/(lifted+1), where "lifted" counts the B-players
  // whose digit rose above the negative level.  acc[j][y] accumulates, per
  // digit pass, the interval mass with exactly j lifted players.
  const int n = m.n();
  const std::uint64_t size = m.size();
  std::vector<std::vector<double>> acc(static_cast<std::size_t>(n) + 1);
  acc[0].assign(m.coeffs().begin(), m.coeffs().end());
  for (int j = 1; j <= n; ++j) acc[j].assign(size, 0.0);
  std::uint64_t step = 1;
  for (int p = 0; p < n; ++p, step *= 3) {
    for (int j = std::min(p + 1, n); j >= 1; --j) {
      auto& cur = acc[j];
      const auto& below = acc[j - 1];
      for (std::uint64_t base = 0; base < size; base += 3 * step)
        for (std::uint64_t y = base; y < base + step; ++y)
          cur[y] += below[y + step] + below[y + 2 * step];
    }
  }
  std::vector<double> out(size, 0.0);
  for (std::uint64_t y = 0; y < size; ++y) {
    long double total = 0.0L;
    for (int j = 0; j <= n; ++j)
      total += acc[j][y] / static_cast<long double>(j + 1);
    out[y] = static_cast<double>(total);
  }
  return InteractionRep(n, std::move(out));
}

// ---------------------------------------------------------------------------
// Reduced and restricted games

namespace {

struct Relabeling {
  int n_reduced = 0;
  std::vector<std::uint64_t> expand_bit;  // reduced bit -> original mask

  std::uint64_t expand(std::uint64_t reduced_mask) const {
    std::uint64_t out = 0;
    while (reduced_mask != 0) {
      out |= expand_bit[std::countr_zero(reduced_mask)];
      reduced_mask &= reduced_mask - 1;
    }
    return out;
  }
};

// Players of N\K keep their relative order; when with_merged, [K] follows.
Relabeling make_relabeling(int n, const PlayerSet& k, bool with_merged) {
  Relabeling r;
  for (int i = 0; i < n; ++i)
    if (!(k.mask >> i & 1))
      r.expand_bit.push_back(std::uint64_t{1} << i);
  if (with_merged) r.expand_bit.push_back(k.mask);
  r.n_reduced = static_cast<int>(r.expand_bit.size());
  return r;
}

void require_valid_block(const BiGame& v, const PlayerSet& k,
                         const char* what) {
  if (v.n() != k.n) throw std::domain_error(std::string(what) + ": n mismatch");
  if (k.is_empty())
    throw std::domain_error(std::string(what) + ": coalition is empty");
}

}  // namespace

ReducedGame reduced_game(const BiGame& v, const PlayerSet& k) {
  require_valid_block(v, k, "reduced_game");
  const Relabeling r = make_relabeling(v.n(), k, /*with_merged=*/true);
  const int nr = r.n_reduced;
  ReducedGame out{BiGame(nr), k, nr, {}};
  out.original_of.assign(nr, 0);
  for (int j = 0; j < nr - 1; ++j)
    out.original_of[j] = std::countr_zero(r.expand_bit[j]) + 1;
  for (std::uint64_t idx = 0; idx < out.game.size(); ++idx) {
    const MaskPair mp = decode_masks(idx, nr);
    out.game[idx] =
        v[encode_masks(r.expand(mp.pos), r.expand(mp.neg), v.n())];
  }
  return out;
}

BiGame restricted_zero(const BiGame& v, const PlayerSet& k) {
  require_valid_block(v, k, "restricted_zero");
  if (k.is_full())
    throw std::domain_error("restricted_zero: coalition covers everyone");
  const Relabeling r = make_relabeling(v.n(), k, /*with_merged=*/false);
  BiGame out(r.n_reduced);
  for (std::uint64_t idx = 0; idx < out.size(); ++idx) {
    const MaskPair mp = decode_masks(idx, r.n_reduced);
    out[idx] = v[encode_masks(r.expand(mp.pos), r.expand(mp.neg), v.n())];
  }
  return out;
}

BiGame restricted_minus(const BiGame& v, const PlayerSet& k) {
  require_valid_block(v, k, "restricted_minus");
  if (k.is_full())
    throw std::domain_error("restricted_minus: coalition covers everyone");
  const Relabeling r = make_relabeling(v.n(), k, /*with_merged=*/false);
  BiGame out(r.n_reduced);
  for (std::uint64_t idx = 0; idx < out.size(); ++idx) {
    const MaskPair mp = decode_masks(idx, r.n_reduced);
    out[idx] =
        v[encode_masks(r.expand(mp.pos), r.expand(mp.neg) | k.mask, v.n())];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Recursion check

double RecursionReport::max_residual() const {
  double r = 0.0;
  if (via_merge_defenders)
    r = std::max(r, std::fabs(direct - *via_merge_defenders));
  if (via_merge_defeaters)
    r = std::max(r, std::fabs(direct - *via_merge_defeaters));
  return r;
}

namespace {

// Maps an original-label set into the labeling of a game on N\dropped
// (helper for the recursion right-hand sides).
PlayerSet compress_set(const PlayerSet& orig, const PlayerSet& dropped,
                       int n_reduced) {
  std::uint64_t out = 0;
  int j = 0;
  for (int i = 0; i < orig.n; ++i) {
    if (dropped.mask >> i & 1) continue;
    if (orig.mask >> i & 1) out |= std::uint64_t{1} << j;
    ++j;
  }
  return PlayerSet{out, n_reduced};
}

}  // namespace

RecursionReport recursion_check(const BiGame& v, const PlayerSet& s,
                                const PlayerSet& t) {
  require_disjoint_pair(s, t, "recursion_check");
  if (v.n() != s.n) throw std::domain_error("recursion_check: n mismatch");
  RecursionReport report;
  report.direct = interaction_bi(v, s, t);

  if (!s.is_empty()) {
    const ReducedGame rg = reduced_game(v, s);
    const int nr = rg.game.n();
    double rhs = interaction_bi(rg.game,
                                PlayerSet::single(rg.merged_player, nr),
                                compress_set(t, s, nr));
    // subtract the strictly smaller defender blocks
    std::uint64_t k_mask = s.mask;
    while (true) {
      k_mask = (k_mask - 1) & s.mask;
      if (k_mask == 0) break;
      const PlayerSet k{k_mask, s.n};
      const BiGame sub = restricted_zero(v, k);
      rhs -= interaction_bi(sub, compress_set(s - k, k, sub.n()),
                            compress_set(t, k, sub.n()));
    }
    report.via_merge_defenders = rhs;
  }

  if (!t.is_empty()) {
    const ReducedGame rg = reduced_game(v, t);
    const int nr = rg.game.n();
    double rhs = interaction_bi(rg.game, compress_set(s, t, nr),
                                PlayerSet::single(rg.merged_player, nr));
    std::uint64_t k_mask = t.mask;
    while (true) {
      k_mask = (k_mask - 1) & t.mask;
      if (k_mask == 0) break;
      const PlayerSet k{k_mask, t.n};
      const BiGame sub = restricted_minus(v, k);
      rhs -= interaction_bi(sub, compress_set(s, k, sub.n()),
                            compress_set(t - k, k, sub.n()));
    }
    report.via_merge_defeaters = rhs;
  }

  return report;
}

}  // namespace bicap
