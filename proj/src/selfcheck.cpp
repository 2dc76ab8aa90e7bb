#include "bicap/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "bicap/derivative.hpp"
#include "bicap/game.hpp"
#include "bicap/indices.hpp"
#include "bicap/lattice.hpp"
#include "bicap/moebius.hpp"
#include "bicap/random.hpp"

namespace bicap {

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

bool selfcheck(int n, std::uint64_t seed, std::ostream& out) {
  require_player_count(n);
  out << "seed: " << seed << "\n";
  out << "n: " << n << "\n";

  int passed = 0, failed = 0, skipped = 0;
  auto run = [&](const std::string& name, bool applicable,
                 const std::function<bool()>& check) {
    if (!applicable) {
      out << "skip " << name << " (size cap)\n";
      ++skipped;
      return;
    }
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "FAIL " << name << " (exception: " << e.what() << ")\n";
      ++failed;
      return;
    }
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    (ok ? passed : failed) += 1;
  };

  const BiGame game = random_bigame(n, seed);
  const BiGame bicap_game = random_bicapacity(n, seed + 1);
  const Capacity nu1 = random_capacity(n, seed + 2);
  const Capacity nu2 = random_capacity(n, seed + 3);
  const bool small_direct = n <= kDirectTransformMaxN;

  run("lattice.index-bijection", true, [&] {
    for (std::uint64_t idx = 0; idx < pow3(n); ++idx)
      if (to_index(from_index({idx}, n)).value != idx) return false;
    return true;
  });

  run("lattice.birkhoff-decomposition", true, [&] {
    for (const BiSet& x : enumerate_q(n)) {
      BiSet acc = BiSet::bottom(n);
      for (const BiSet& j : irredundant_decomposition(x)) acc = sup(acc, j);
      if (!(acc == x)) return false;
      if (static_cast<int>(irredundant_decomposition(x).size()) != layer(x))
        return false;
    }
    return true;
  });

  run("moebius.fast-roundtrip", true, [&] {
    const BiGame back = fast_zeta(fast_moebius(game));
    return max_abs_diff(game.values(), back.values()) < 1e-9;
  });

  run("moebius.fast-vs-direct", small_direct, [&] {
    const MoebiusRep direct = moebius(game);
    const MoebiusRep fast = fast_moebius(game);
    return max_abs_diff(direct.coeffs(), fast.coeffs()) < 1e-12;
  });

  run("moebius.matrix-route", n <= kMatrixMaxN && small_direct, [&] {
    const TransformMatrix t(n);
    const std::vector<double> via_matrix = t.apply(game.values());
    const MoebiusRep direct = moebius(game);
    return max_abs_diff(via_matrix, direct.coeffs()) < 1e-12;
  });

  run("moebius.normalization-identities", true, [&] {
    const MoebiusRep m = fast_moebius(bicap_game);
    if (std::fabs(m[0] + 1.0) > 1e-9) return false;
    long double total = 0.0L;
    for (std::uint64_t idx = 0; idx < m.size(); ++idx) total += m[idx];
    if (std::fabs(static_cast<double>(total) - 1.0) > 1e-9) return false;
    long double row = 0.0L;  // entries (empty, B)
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
      row += m[encode_masks(0, b, n)];
    return std::fabs(static_cast<double>(row)) < 1e-9;
  });

  run("moebius.cpt-closed-form", small_direct, [&] {
    const MoebiusRep closed = moebius_cpt(nu1, nu2);
    const MoebiusRep direct = moebius(make_cpt(nu1, nu2));
    return max_abs_diff(closed.coeffs(), direct.coeffs()) < 1e-9;
  });

  run("derivative.moebius-equivalence", small_direct, [&] {
    const MoebiusRep m = fast_moebius(game);
    for (const BiSet& pt : enumerate_q(n)) {
      const DerivativeSpec spec = DerivativeSpec::at_point(pt);
      const BiSet at(PlayerSet::none(n), spec.s_set().complement());
      if (std::fabs(delta(game, spec, at) - delta_from_moebius(m, spec, at)) >
          1e-9)
        return false;
    }
    return true;
  });

  run("derivative.moebius-via-derivative", small_direct, [&] {
    const MoebiusRep via = moebius_via_derivative(game);
    const MoebiusRep m = fast_moebius(game);
    return max_abs_diff(via.coeffs(), m.coeffs()) < 1e-9;
  });

  run("shapley.direct-vs-moebius", true, [&] {
    const BiShapley a = shapley_bi(game);
    const BiShapley b = shapley_bi_moebius(fast_moebius(game));
    return max_abs_diff(a.left, b.left) < 1e-9 &&
           max_abs_diff(a.right, b.right) < 1e-9;
  });

  run("shapley.efficiency", true, [&] {
    const BiShapley phi = shapley_bi(game);
    long double total = 0.0L;
    for (double x : phi.left) total += x;
    for (double x : phi.right) total += x;
    const double expected = game[game.size() - 1] - game[0];
    return std::fabs(static_cast<double>(total) - expected) < 1e-9;
  });

  run("shapley.unanimity-values", true, [&] {
    for (const BiSet& center : enumerate_q(n)) {
      const BiShapley phi = shapley_bi(bi_unanimity(center));
      const int t = center.neg().size();
      if (t == n) continue;  // (empty, N) carries no coordinates
      const double share = 1.0 / (n - t);
      for (int i = 1; i <= n; ++i) {
        const double want_left = center.pos().contains(i) ? share : 0.0;
        const double want_right = center.neutral().contains(i) ? share : 0.0;
        if (std::fabs(phi.left[i - 1] - want_left) > 1e-12) return false;
        if (std::fabs(phi.right[i - 1] - want_right) > 1e-12) return false;
      }
    }
    return true;
  });

  run("interaction.three-routes", n <= 4, [&] {
    const MoebiusRep m = fast_moebius(game);
    for (const BiSet& pt : enumerate_q(n)) {
      const PlayerSet s = pt.pos();
      const PlayerSet t = pt.neutral();  // walk every disjoint pair once
      const double direct = interaction_bi(game, s, t);
      const double via_point =
          interaction_bi_point(game, BiSet(s, (s | t).complement()));
      const double via_moebius = interaction_bi_moebius(m, s, t);
      if (std::fabs(direct - via_point) > 1e-9) return false;
      if (std::fabs(direct - via_moebius) > 1e-9) return false;
    }
    return true;
  });

  run("interaction.table", true, [&] {
    const InteractionRep table = interaction_table(fast_moebius(game));
    const BiShapley phi = shapley_bi(game);
    for (int i = 1; i <= n; ++i) {
      const PlayerSet pi = PlayerSet::single(i, n);
      if (std::fabs(table.pair(pi, PlayerSet::none(n)) - phi.left[i - 1]) >
          1e-9)
        return false;
      if (std::fabs(table.pair(PlayerSet::none(n), pi) - phi.right[i - 1]) >
          1e-9)
        return false;
    }
    return true;
  });

  run("interaction.recursion", n <= 4, [&] {
    for (const BiSet& pt : enumerate_q(n)) {
      const PlayerSet s = pt.pos();
      const PlayerSet t = pt.neutral();
      if (s.is_empty() && t.is_empty()) continue;
      if (recursion_check(game, s, t).max_residual() > 1e-9) return false;
    }
    return true;
  });

  run("indices.comb-lemma", true, [&] {
    for (int nn = 1; nn <= 12; ++nn)
      for (int k = 0; k < nn; ++k)
        if (!(comb_lemma(nn, k) == Rational(1, nn - k))) return false;
    return true;
  });

  out << (failed == 0 ? "PASS" : "FAIL") << " (" << passed << " passed, "
      << failed << " failed, " << skipped << " skipped)\n";
  return failed == 0;
}

}  // namespace bicap
