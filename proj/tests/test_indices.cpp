#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bicap/indices.hpp"
#include "bicap/random.hpp"

using namespace bicap;

namespace {

BiSet bs(std::string_view text, int n) { return parse_biset(text, n); }

// Every disjoint (S,T) pair, by walking lattice points.
template <typename Fn>
void for_each_pair(int n, Fn&& fn) {
  for (const BiSet& pt : enumerate_q(n)) fn(pt.pos(), pt.neutral());
}

BiGame permuted(const BiGame& v, const std::vector<int>& sigma) {
  // (v o sigma^{-1})(S,T) = v(sigma^{-1}(S), sigma^{-1}(T))
  const int n = v.n();
  BiGame out(n);
  for (const BiSet& x : enumerate_q(n)) {
    std::uint64_t pos = 0, neg = 0;
    for (int i = 1; i <= n; ++i) {
      if (x.pos().contains(sigma[i - 1]))
        pos |= std::uint64_t{1} << (i - 1);
      if (x.neg().contains(sigma[i - 1]))
        neg |= std::uint64_t{1} << (i - 1);
    }
    // x = sigma(y) for y = (pos, neg), so out.at(x) = v.at(y)
    out.at(x) = v[encode_masks(pos, neg, n)];
  }
  return out;
}

}  // namespace

TEST_CASE("exact coefficients and the combinatorial lemma") {
  CHECK(shapley_coefficient(3, 0) == Rational(1, 3));
  CHECK(shapley_coefficient(3, 1) == Rational(1, 6));
  CHECK(interaction_coefficient(3, 1, 0) == Rational(1, 3));
  CHECK(bi_interaction_coefficient(2, 1, 1, 0) == Rational(1));
  CHECK(point_interaction_coefficient(1, 0) == Rational(1, 2));

  SUBCASE("comb lemma pinned values") {
    CHECK(comb_lemma(3, 1) == Rational(1, 2));
    for (int n = 1; n <= 12; ++n) CHECK(comb_lemma(n, 0) == Rational(1, n));
  }
  SUBCASE("comb lemma exact for n<=12, all k") {
    for (int n = 1; n <= 12; ++n)
      for (int k = 0; k < n; ++k) CHECK(comb_lemma(n, k) == Rational(1, n - k));
  }
  SUBCASE("out-of-range arguments") {
    CHECK_THROWS_AS(comb_lemma(3, 3), std::domain_error);
    CHECK_THROWS_AS(shapley_coefficient(3, 3), std::domain_error);
  }
}

TEST_CASE("classical Shapley value") {
  SUBCASE("additive games return their weights") {
    const int n = 4;
    Capacity nu(n);
    const double w[4] = {0.4, 0.3, 0.2, 0.1};
    for (std::uint64_t mask = 0; mask < 16; ++mask)
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) nu[mask] += w[i];
    const std::vector<double> phi = shapley_classical(nu);
    for (int i = 0; i < n; ++i)
      CHECK(phi[i] == doctest::Approx(w[i]).epsilon(1e-12));
  }
  SUBCASE("unanimity games split evenly over the carrier") {
    const PlayerSet b = PlayerSet::of({1, 3}, 4);
    const std::vector<double> phi = shapley_classical(unanimity(b));
    for (int i = 1; i <= 4; ++i)
      CHECK(phi[i - 1] ==
            doctest::Approx(b.contains(i) ? 0.5 : 0.0).epsilon(1e-12));
  }
  SUBCASE("efficiency and the Moebius route at singletons, n<=4") {
    for (int n = 1; n <= 4; ++n) {
      const Capacity nu = random_capacity(n, 10 + n);
      const std::vector<double> phi = shapley_classical(nu);
      CHECK(std::accumulate(phi.begin(), phi.end(), 0.0) ==
            doctest::Approx(nu[nu.size() - 1]).epsilon(1e-9));
      for (int i = 1; i <= n; ++i) {
        const PlayerSet pi = PlayerSet::single(i, n);
        CHECK(phi[i - 1] ==
              doctest::Approx(interaction_classical_moebius(nu, pi))
                  .epsilon(1e-9));
        CHECK(phi[i - 1] ==
              doctest::Approx(interaction_classical(nu, pi)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("classical interaction index") {
  SUBCASE("the two routes agree on every coalition, n<=4") {
    for (int n = 1; n <= 4; ++n) {
      const Capacity nu = random_capacity(n, 20 + n);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        CHECK(interaction_classical(nu, PlayerSet{s, n}) ==
              doctest::Approx(interaction_classical_moebius(nu, PlayerSet{s, n}))
                  .epsilon(1e-9));
    }
  }
  SUBCASE("k-additive: I vanishes above k and equals m at k") {
    const int n = 4, k = 2;
    const Capacity base = random_capacity(n, 25);
    std::vector<double> mc = classical_moebius(base);
    for (std::uint64_t mask = 0; mask < mc.size(); ++mask)
      if (std::popcount(mask) > k) mc[mask] = 0.0;
    const Capacity nu = classical_zeta(mc, n);
    for (std::uint64_t s = 0; s < 16; ++s) {
      const double val = interaction_classical(nu, PlayerSet{s, n});
      if (std::popcount(s) > k) CHECK(std::fabs(val) < 1e-9);
      if (std::popcount(s) == k)
        CHECK(val == doctest::Approx(mc[s]).epsilon(1e-9));
    }
  }
  SUBCASE("conjugate relation I^conj(S) = (-1)^{s+1} I(S), n<=4") {
    for (int n = 1; n <= 4; ++n) {
      const Capacity nu = random_capacity(n, 30 + n);
      const Capacity bar = conjugate(nu);
      for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        const double sign = (std::popcount(s) + 1) % 2 == 0 ? 1.0 : -1.0;
        CHECK(interaction_classical(bar, PlayerSet{s, n}) ==
              doctest::Approx(sign * interaction_classical(nu, PlayerSet{s, n}))
                  .epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("bi-Shapley value") {
  SUBCASE("CPT games decouple into the classical values") {
    const int n = 4;
    const Capacity nu1 = random_capacity(n, 41);
    const Capacity nu2 = random_capacity(n, 42);
    const BiShapley phi = shapley_bi(make_cpt(nu1, nu2));
    const std::vector<double> phi1 = shapley_classical(nu1);
    const std::vector<double> phi2 = shapley_classical(nu2);
    for (int i = 0; i < n; ++i) {
      CHECK(phi.left[i] == doctest::Approx(phi1[i]).epsilon(1e-9));
      CHECK(phi.right[i] == doctest::Approx(phi2[i]).epsilon(1e-9));
    }
  }
  SUBCASE("bi-unanimity values are exactly 1/(n-t) on the carriers, n<=4") {
    for (int n = 1; n <= 4; ++n)
      for (const BiSet& center : enumerate_q(n)) {
        const BiShapley phi = shapley_bi(bi_unanimity(center));
        const int t = center.neg().size();
        for (int i = 1; i <= n; ++i) {
          const double left = t == n ? 0.0
                              : center.pos().contains(i) ? 1.0 / (n - t)
                                                         : 0.0;
          const double right = t == n ? 0.0
                               : center.neutral().contains(i) ? 1.0 / (n - t)
                                                              : 0.0;
          CHECK(phi.left[i - 1] == left);    // exact, no tolerance
          CHECK(phi.right[i - 1] == right);
        }
      }
  }
  SUBCASE("efficiency on random games") {
    for (int n = 1; n <= 4; ++n) {
      const BiGame v = random_bigame(n, 50 + n);
      const BiShapley phi = shapley_bi(v);
      const double total =
          std::accumulate(phi.left.begin(), phi.left.end(), 0.0) +
          std::accumulate(phi.right.begin(), phi.right.end(), 0.0);
      CHECK(total ==
            doctest::Approx(v[v.size() - 1] - v[0]).epsilon(1e-9));
    }
  }
  SUBCASE("theorem form vs Moebius form, n<=4") {
    for (int n = 1; n <= 4; ++n)
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const BiGame v = random_bigame(n, seed * 31 + n);
        const BiShapley a = shapley_bi(v);
        const BiShapley b = shapley_bi_moebius(fast_moebius(v));
        for (int i = 0; i < n; ++i) {
          CHECK(a.left[i] == doctest::Approx(b.left[i]).epsilon(1e-9));
          CHECK(a.right[i] == doctest::Approx(b.right[i]).epsilon(1e-9));
        }
      }
  }
  SUBCASE("additive games return their weight vectors") {
    const std::vector<double> w1 = {0.5, 0.2, 0.3};
    const std::vector<double> w2 = {0.1, 0.7, 0.2};
    const BiShapley phi = shapley_bi_moebius(fast_moebius(make_additive(w1, w2)));
    for (int i = 0; i < 3; ++i) {
      CHECK(phi.left[i] == doctest::Approx(w1[i]).epsilon(1e-12));
      CHECK(phi.right[i] == doctest::Approx(w2[i]).epsilon(1e-12));
    }
  }
  SUBCASE("planted left-null and right-null players get zero") {
    const int n = 4;
    BiGame v = random_bigame(n, 60);
    const PlayerSet p2 = PlayerSet::single(2, n);
    const PlayerSet p3 = PlayerSet::single(3, n);
    for (const BiSet& x : enumerate_q(n)) {
      if (x.pos().contains(2)) v.at(x) = v.at(BiSet(x.pos() - p2, x.neg()));
    }
    for (const BiSet& x : enumerate_q(n)) {
      if (x.neg().contains(3)) v.at(x) = v.at(BiSet(x.pos(), x.neg() - p3));
    }
    const BiShapley phi = shapley_bi(v);
    CHECK(phi.left[1] == doctest::Approx(0.0));
    CHECK(phi.right[2] == doctest::Approx(0.0));
  }
  SUBCASE("fairness: relabeling permutes the value, n<=3") {
    for (int n = 2; n <= 3; ++n) {
      const BiGame v = random_bigame(n, 70 + n);
      const BiShapley phi = shapley_bi(v);
      std::vector<int> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 1);
      do {
        const BiShapley phi_s = shapley_bi(permuted(v, sigma));
        for (int i = 1; i <= n; ++i) {
          CHECK(phi_s.left[sigma[i - 1] - 1] ==
                doctest::Approx(phi.left[i - 1]).epsilon(1e-12));
          CHECK(phi_s.right[sigma[i - 1] - 1] ==
                doctest::Approx(phi.right[i - 1]).epsilon(1e-12));
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  SUBCASE("symmetry axiom via an integrated fixture, n<=3") {
    // Build v2 with v2(S u i, T) - v2(S, T) = v1(S, T) - v1(S, T u i) and
    // v2 = 0 wherever i is not a defender; then the i-th left coordinate of
    // v2 must equal the i-th right coordinate of v1.
    for (int n = 1; n <= 3; ++n) {
      const BiGame v1 = random_bigame(n, 80 + n);
      for (int i = 1; i <= n; ++i) {
        const PlayerSet pi = PlayerSet::single(i, n);
        BiGame v2(n);
        for (const BiSet& x : enumerate_q(n)) {
          if (!x.pos().contains(i)) continue;
          const BiSet base(x.pos() - pi, x.neg());
          v2.at(x) = v2.at(base) + v1.at(base) -
                     v1.at(BiSet(base.pos(), base.neg() | pi));
        }
        // fixture consistency: the defining differences hold everywhere
        for (const BiSet& x : enumerate_q(n)) {
          if (x.pos().contains(i) || x.neg().contains(i)) continue;
          CHECK(v2.at(BiSet(x.pos() | pi, x.neg())) - v2.at(x) ==
                doctest::Approx(v1.at(x) - v1.at(BiSet(x.pos(), x.neg() | pi)))
                    .epsilon(1e-12));
        }
        CHECK(shapley_bi(v2).left[i - 1] ==
              doctest::Approx(shapley_bi(v1).right[i - 1]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("bi-interaction index") {
  SUBCASE("n=2 pinned expansion") {
    const BiGame v = random_bigame(2, 90);
    const double expected = v.at(bs("1|", 2)) - v.at(bs("|", 2)) -
                            v.at(bs("1|2", 2)) + v.at(bs("|2", 2));
    CHECK(interaction_bi(v, PlayerSet::of({1}, 2), PlayerSet::of({2}, 2)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("singleton pairs reproduce the Shapley coordinates, n<=4") {
    for (int n = 1; n <= 4; ++n) {
      const BiGame v = random_bigame(n, 95 + n);
      const BiShapley phi = shapley_bi(v);
      for (int i = 1; i <= n; ++i) {
        const PlayerSet pi = PlayerSet::single(i, n);
        CHECK(interaction_bi(v, pi, PlayerSet::none(n)) ==
              doctest::Approx(phi.left[i - 1]).epsilon(1e-9));
        CHECK(interaction_bi(v, PlayerSet::none(n), pi) ==
              doctest::Approx(phi.right[i - 1]).epsilon(1e-9));
      }
    }
  }
  SUBCASE("pair form of the two-singleton index matches its own formula") {
    const int n = 4;
    const BiGame v = random_bigame(n, 99);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const PlayerSet pi = PlayerSet::single(i, n);
        const PlayerSet pj = PlayerSet::single(j, n);
        // sum over S avoiding i,j of (n-s-2)!s!/(n-1)! Delta_{i,j} at
        // (S, N\(S u i))
        long double acc = 0.0L;
        const std::uint64_t rest =
            PlayerSet::all(n).mask & ~pi.mask & ~pj.mask;
        std::uint64_t s = rest;
        while (true) {
          const int ssz = std::popcount(s);
          const Rational c(1, static_cast<long long>(n - 1) *
                                  binomial_exact(n - 2, ssz));
          // (n-s-2)! s! / (n-1)!  ==  1 / ((n-1) C(n-2,s))
          const std::uint64_t l = PlayerSet::all(n).mask & ~(s | pi.mask);
          acc += c.to_long_double() *
                 detail::delta_unchecked(v, pi.mask, pj.mask, s, l);
          if (s == 0) break;
          s = (s - 1) & rest;
        }
        CHECK(interaction_bi(v, pi, pj) ==
              doctest::Approx(static_cast<double>(acc)).epsilon(1e-9));
      }
  }
  SUBCASE("three routes agree on every pair, n<=4") {
    for (int n = 1; n <= 4; ++n) {
      const BiGame v = random_bigame(n, 101 + n);
      const MoebiusRep m = fast_moebius(v);
      const InteractionRep table = interaction_table(m);
      for_each_pair(n, [&](const PlayerSet& s, const PlayerSet& t) {
        const double direct = interaction_bi(v, s, t);
        CHECK(direct ==
              doctest::Approx(interaction_bi_point(
                                  v, BiSet(s, (s | t).complement())))
                  .epsilon(1e-9));
        CHECK(direct ==
              doctest::Approx(interaction_bi_moebius(m, s, t)).epsilon(1e-9));
        CHECK(direct == doctest::Approx(table.pair(s, t)).epsilon(1e-9));
      });
    }
  }
  SUBCASE("overlapping pairs are rejected") {
    const BiGame v = random_bigame(2, 1);
    CHECK_THROWS_AS(
        interaction_bi(v, PlayerSet::of({1}, 2), PlayerSet::of({1}, 2)),
        std::domain_error);
  }
}

TEST_CASE("reduced and restricted games") {
  const int n = 4;
  const BiGame v = random_bigame(n, 111);

  SUBCASE("merging a singleton relabels the game") {
    const ReducedGame rg = reduced_game(v, PlayerSet::single(2, n));
    REQUIRE(rg.game.n() == n);
    // reduced labels: 1,3,4,[2] -> positions 1,2,3,4
    for (const BiSet& x : enumerate_q(n)) {
      std::uint64_t pos = 0, neg = 0;
      const int map[4] = {1, 3, 4, 2};
      for (int j = 1; j <= 4; ++j) {
        if (x.pos().contains(map[j - 1])) pos |= std::uint64_t{1} << (j - 1);
        if (x.neg().contains(map[j - 1])) neg |= std::uint64_t{1} << (j - 1);
      }
      CHECK(rg.game[encode_masks(pos, neg, n)] == v.at(x));
    }
  }
  SUBCASE("merged coalition expands as one block") {
    const PlayerSet k = PlayerSet::of({1, 3}, n);
    const ReducedGame rg = reduced_game(v, k);
    REQUIRE(rg.game.n() == 3);
    CHECK(rg.merged_player == 3);
    // [K] as lone defender = original K as defenders
    const BiSet merged_def(PlayerSet::single(3, 3), PlayerSet::none(3));
    CHECK(rg.game.at(merged_def) == v.at(BiSet(k, PlayerSet::none(n))));
    // [K] as lone defeater
    const BiSet merged_fee(PlayerSet::none(3), PlayerSet::single(3, 3));
    CHECK(rg.game.at(merged_fee) == v.at(BiSet(PlayerSet::none(n), k)));
  }
  SUBCASE("restrictions fix the dropped coalition's level") {
    const PlayerSet k = PlayerSet::of({2, 4}, n);
    const BiGame zero = restricted_zero(v, k);
    const BiGame minus = restricted_minus(v, k);
    REQUIRE(zero.n() == 2);
    for (const BiSet& x : enumerate_q(2)) {
      // reduced players 1,2 are original 1,3
      std::uint64_t pos = 0, neg = 0;
      const int map[2] = {1, 3};
      for (int j = 1; j <= 2; ++j) {
        if (x.pos().contains(j))
          pos |= std::uint64_t{1} << (map[j - 1] - 1);
        if (x.neg().contains(j))
          neg |= std::uint64_t{1} << (map[j - 1] - 1);
      }
      CHECK(zero.at(x) == v[encode_masks(pos, neg, n)]);
      CHECK(minus.at(x) == v[encode_masks(pos, neg | k.mask, n)]);
    }
    // restricted_minus generally misses the game axiom
    CHECK(minus[minus.origin_index()] ==
          v.at(BiSet(PlayerSet::none(n), k)));
  }
  SUBCASE("bad coalitions are rejected") {
    CHECK_THROWS_AS(reduced_game(v, PlayerSet::none(n)), std::domain_error);
    CHECK_THROWS_AS(restricted_zero(v, PlayerSet::all(n)), std::domain_error);
  }
}

TEST_CASE("recursion formulas") {
  SUBCASE("residual vanishes on every applicable pair, n<=4") {
    for (int n = 2; n <= 4; ++n) {
      const BiGame v = random_bigame(n, 120 + n);
      for_each_pair(n, [&](const PlayerSet& s, const PlayerSet& t) {
        if (s.is_empty() && t.is_empty()) return;
        const RecursionReport r = recursion_check(v, s, t);
        CHECK(r.max_residual() < 1e-9);
        if (!s.is_empty()) CHECK(r.via_merge_defenders.has_value());
        if (!t.is_empty()) CHECK(r.via_merge_defeaters.has_value());
      });
    }
  }
  SUBCASE("CPT games satisfy the recursion with both sides zero on mixed "
          "pairs") {
    const int n = 3;
    const BiGame v = make_cpt(random_capacity(n, 131), random_capacity(n, 132));
    for_each_pair(n, [&](const PlayerSet& s, const PlayerSet& t) {
      if (s.is_empty() || t.is_empty()) return;
      const RecursionReport r = recursion_check(v, s, t);
      CHECK(std::fabs(r.direct) < 1e-9);
      CHECK(r.max_residual() < 1e-9);
    });
  }
}

TEST_CASE("special families") {
  SUBCASE("k-additive games: I(A,B) vanishes under the support layer and "
          "equals m on it") {
    const int n = 4, k = 2;
    // truncate the Moebius support of a random game above layer k
    MoebiusRep m = fast_moebius(random_bigame(n, 141));
    for (const BiSet& x : enumerate_q(n))
      if (layer(x) > k) m.at(x) = 0.0;
    const BiGame v = fast_zeta(m);
    const InteractionRep table = interaction_table(fast_moebius(v));
    for (const BiSet& point : enumerate_q(n)) {
      const int b = point.neg().size();
      if (b < n - k) CHECK(std::fabs(table.point(point)) < 1e-9);
      if (b == n - k)
        CHECK(table.point(point) ==
              doctest::Approx(m.at(point)).epsilon(1e-9));
    }
  }
  SUBCASE("CPT block structure and classical reductions, n<=4") {
    for (int n = 2; n <= 4; ++n) {
      const Capacity nu1 = random_capacity(n, 151 + n);
      const Capacity nu2 = random_capacity(n, 161 + n);
      const BiGame v = make_cpt(nu1, nu2);
      const Capacity bar2 = conjugate(nu2);
      for_each_pair(n, [&](const PlayerSet& s, const PlayerSet& t) {
        const double val = interaction_bi(v, s, t);
        if (!s.is_empty() && !t.is_empty()) {
          CHECK(std::fabs(val) < 1e-9);
        } else if (!s.is_empty()) {
          CHECK(val ==
                doctest::Approx(interaction_classical(nu1, s)).epsilon(1e-9));
        } else if (!t.is_empty()) {
          CHECK(val ==
                doctest::Approx(interaction_classical(bar2, t)).epsilon(1e-9));
        }
      });
    }
  }
  SUBCASE("asymmetric games: I_{empty,T} = I^nu(T)") {
    const int n = 4;
    const Capacity nu = random_capacity(n, 171);
    const BiGame v = make_cpt(nu, conjugate(nu));
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << n); ++t) {
      const PlayerSet ts{t, n};
      CHECK(interaction_bi(v, PlayerSet::none(n), ts) ==
            doctest::Approx(interaction_classical(nu, ts)).epsilon(1e-9));
      CHECK(interaction_bi(v, ts, PlayerSet::none(n)) ==
            doctest::Approx(interaction_classical(nu, ts)).epsilon(1e-9));
    }
  }
  SUBCASE("symmetric games: I_{empty,T} = (-1)^{t+1} I^nu(T)") {
    const int n = 4;
    const Capacity nu = random_capacity(n, 181);
    const BiGame v = make_cpt(nu, nu);
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << n); ++t) {
      const PlayerSet ts{t, n};
      const double sign = (std::popcount(t) + 1) % 2 == 0 ? 1.0 : -1.0;
      CHECK(interaction_bi(v, PlayerSet::none(n), ts) ==
            doctest::Approx(sign * interaction_classical(nu, ts))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("interaction table accessors") {
  const int n = 3;
  const BiGame v = random_bigame(n, 190);
  const InteractionRep table = interaction_table(fast_moebius(v));
  CHECK(table.size() == pow3(n));
  // the notation bridge is an involution: pair(S,T) = point(S, N\(S u T))
  for_each_pair(n, [&](const PlayerSet& s, const PlayerSet& t) {
    CHECK(table.pair(s, t) == table.point(BiSet(s, (s | t).complement())));
  });
  CHECK_THROWS_AS(table.pair(PlayerSet::of({1}, n), PlayerSet::of({1}, n)),
                  std::domain_error);
}
