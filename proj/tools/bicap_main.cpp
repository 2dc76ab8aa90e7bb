// bicap: command-line front end for bi-capacity analysis.
//
// Verbs: validate, info, moebius, zeta, derivative, shapley, interaction,
// selfcheck, bench.  Input games travel in the JSON interchange schema (see
// README).  Exit codes: 0 success, 1 validation failure, 2 format error or
// bad usage.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bicap/derivative.hpp"
#include "bicap/game.hpp"
#include "bicap/indices.hpp"
#include "bicap/json_io.hpp"
#include "bicap/lattice.hpp"
#include "bicap/moebius.hpp"
#include "bicap/random.hpp"
#include "bicap/selfcheck.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFormat = 2;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

const bicap::BiGame& as_bigame(const bicap::Document& doc,
                               const std::string& verb) {
  if (const auto* v = std::get_if<bicap::BiGame>(&doc)) return *v;
  throw bicap::FormatError(verb + " expects a document of kind \"bigame\"");
}

const bicap::MoebiusRep& as_moebius(const bicap::Document& doc,
                                    const std::string& verb) {
  if (const auto* m = std::get_if<bicap::MoebiusRep>(&doc)) return *m;
  throw bicap::FormatError(verb + " expects a document of kind \"moebius\"");
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& path, bool as_json) {
  const bicap::Document doc = bicap::load_document(path);
  if (const auto* v = std::get_if<bicap::BiGame>(&doc)) {
    const bicap::ValidationReport r = bicap::validate(*v);
    if (as_json) {
      json j{{"kind", "bigame"},
             {"n", v->n()},
             {"is_game", r.is_game},
             {"is_bicapacity", r.is_bicapacity},
             {"is_normalized", r.is_normalized},
             {"violation_count", r.violation_count}};
      json viols = json::array();
      for (const auto& [lo, hi] : r.violations)
        viols.push_back({bicap::to_string(lo), bicap::to_string(hi)});
      j["violations"] = viols;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "kind: bigame\nn: " << v->n() << "\n"
                << "is_game: " << (r.is_game ? "true" : "false") << "\n"
                << "is_bicapacity: " << (r.is_bicapacity ? "true" : "false")
                << "\n"
                << "is_normalized: " << (r.is_normalized ? "true" : "false")
                << "\n"
                << "violations: " << r.violation_count << "\n";
      for (const auto& [lo, hi] : r.violations)
        std::cout << "  v(" << bicap::to_string(lo) << ") > v("
                  << bicap::to_string(hi) << ")\n";
    }
    return r.is_game ? kExitOk : kExitValidation;
  }
  if (const auto* nu = std::get_if<bicap::Capacity>(&doc)) {
    const bicap::CapacityReport r = bicap::validate(*nu);
    if (as_json) {
      json j{{"kind", "capacity"},
             {"n", nu->n()},
             {"is_game", r.is_game},
             {"is_capacity", r.is_capacity},
             {"is_normalized", r.is_normalized},
             {"violation_count", r.violation_count}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "kind: capacity\nn: " << nu->n() << "\n"
                << "is_game: " << (r.is_game ? "true" : "false") << "\n"
                << "is_capacity: " << (r.is_capacity ? "true" : "false") << "\n"
                << "is_normalized: " << (r.is_normalized ? "true" : "false")
                << "\n"
                << "violations: " << r.violation_count << "\n";
    }
    return r.is_game ? kExitOk : kExitValidation;
  }
  throw bicap::FormatError("validate expects kind \"bigame\" or \"capacity\"");
}

int run_info(const std::string& path, bool as_json) {
  const bicap::Document doc = bicap::load_document(path);
  json j;
  if (const auto* v = std::get_if<bicap::BiGame>(&doc)) {
    const bicap::ValidationReport r = bicap::validate(*v);
    double lo = v->values()[0], hi = lo;
    for (double x : v->values()) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    j = json{{"kind", "bigame"},      {"n", v->n()},
             {"entries", v->size()},  {"is_game", r.is_game},
             {"is_bicapacity", r.is_bicapacity},
             {"is_normalized", r.is_normalized},
             {"min", lo},             {"max", hi}};
  } else if (const auto* nu = std::get_if<bicap::Capacity>(&doc)) {
    const bicap::CapacityReport r = bicap::validate(*nu);
    j = json{{"kind", "capacity"},   {"n", nu->n()},
             {"entries", nu->size()}, {"is_game", r.is_game},
             {"is_capacity", r.is_capacity},
             {"is_normalized", r.is_normalized}};
  } else if (const auto* m = std::get_if<bicap::MoebiusRep>(&doc)) {
    j = json{{"kind", "moebius"},
             {"n", m->n()},
             {"entries", m->size()},
             {"nonzeros", bicap::nonzero_entries(*m).size()},
             {"k_additivity", bicap::k_additivity(*m)}};
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << it.value().dump() << "\n";
  }
  return kExitOk;
}

int run_moebius(const std::string& path, const std::string& method,
                bool allow_large, bool as_json, bool sparse,
                const std::string& out_path) {
  const bicap::Document doc = bicap::load_document(path);
  const bicap::BiGame& v = as_bigame(doc, "moebius");
  bicap::MoebiusRep m(v.n());
  if (method == "fast") {
    m = bicap::fast_moebius(v);
  } else if (method == "direct") {
    m = bicap::moebius(v, allow_large);
  } else if (method == "matrix") {
    const bicap::TransformMatrix t(v.n());
    m = bicap::MoebiusRep(v.n(), t.apply(v.values()));
  } else {
    throw bicap::FormatError("unknown --path \"" + method +
                             "\" (fast|direct|matrix)");
  }
  if (!out_path.empty()) bicap::save_json(bicap::to_json(m, sparse), out_path);
  if (as_json) {
    std::cout << bicap::to_json(m, sparse).dump(2) << "\n";
  } else {
    for (const auto& [x, val] : bicap::nonzero_entries(m))
      std::cout << bicap::to_string(x) << ": " << fmt(val) << "\n";
  }
  return kExitOk;
}

int run_zeta(const std::string& path, bool as_json, const std::string& out_path) {
  const bicap::Document doc = bicap::load_document(path);
  const bicap::MoebiusRep& m = as_moebius(doc, "zeta");
  const bicap::BiGame v = bicap::fast_zeta(m);
  if (!out_path.empty()) bicap::save_json(bicap::to_json(v), out_path);
  if (as_json) {
    std::cout << bicap::to_json(v).dump(2) << "\n";
  } else {
    for (std::uint64_t idx = 0; idx < v.size(); ++idx)
      std::cout << bicap::to_string(bicap::from_index({idx}, v.n())) << ": "
                << fmt(v[idx]) << "\n";
  }
  return kExitOk;
}

int run_derivative(const std::string& path, const std::string& left,
                   const std::string& right, const std::string& at_text) {
  const bicap::Document doc = bicap::load_document(path);
  const bicap::BiGame& v = as_bigame(doc, "derivative");
  const int n = v.n();
  const bicap::DerivativeSpec spec(bicap::parse_player_set(left, n),
                                   bicap::parse_player_set(right, n));
  const bicap::BiSet at = bicap::parse_biset(at_text, n);
  std::cout << fmt(bicap::delta(v, spec, at)) << "\n";
  return kExitOk;
}

int run_shapley(const std::string& path, bool moebius_path, bool as_json) {
  const bicap::Document doc = bicap::load_document(path);
  const bicap::BiGame& v = as_bigame(doc, "shapley");
  const bicap::BiShapley phi = moebius_path
                                   ? bicap::shapley_bi_moebius(
                                         bicap::fast_moebius(v))
                                   : bicap::shapley_bi(v);
  if (as_json) {
    std::cout << json{{"n", v.n()}, {"left", phi.left}, {"right", phi.right}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "player" << std::setw(26) << "left" << std::setw(26)
              << "right\n";
    for (int i = 0; i < v.n(); ++i)
      std::cout << std::left << std::setw(6) << (i + 1) << std::right
                << std::setw(26) << fmt(phi.left[i]) << std::setw(26)
                << fmt(phi.right[i]) << "\n";
  }
  return kExitOk;
}

int run_interaction(const std::string& path, const std::string& pair_text,
                    bool all, const std::string& notation, bool as_json) {
  const bicap::Document doc = bicap::load_document(path);
  const bicap::BiGame& v = as_bigame(doc, "interaction");
  const int n = v.n();
  const bool point_notation = notation == "point";
  if (!point_notation && notation != "st")
    throw bicap::FormatError("unknown --notation \"" + notation +
                             "\" (st|point)");
  if (!all) {
    if (pair_text.empty())
      throw bicap::FormatError("interaction needs --pair \"S|T\" or --all");
    const bicap::BiSet parsed = bicap::parse_biset(pair_text, n);
    const double value =
        point_notation
            ? bicap::interaction_bi_point(v, parsed)
            : bicap::interaction_bi(v, parsed.pos(), parsed.neg());
    std::cout << fmt(value) << "\n";
    return kExitOk;
  }
  const bicap::InteractionRep table =
      bicap::interaction_table(bicap::fast_moebius(v));
  json rows = json::array();
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const bicap::BiSet point = bicap::from_index({idx}, n);
    // the table is stored by lattice point; relabel when st view is wanted
    const std::string label =
        point_notation
            ? bicap::to_string(point)
            : bicap::to_string(bicap::BiSet(point.pos(), point.neutral()));
    if (as_json)
      rows.push_back({label, table.point_by_index(idx)});
    else
      std::cout << label << ": " << fmt(table.point_by_index(idx)) << "\n";
  }
  if (as_json)
    std::cout << json{{"n", n}, {"notation", notation}, {"values", rows}}
                     .dump(2)
              << "\n";
  return kExitOk;
}

int run_selfcheck(int n, std::uint64_t seed) {
  return bicap::selfcheck(n, seed, std::cout) ? kExitOk : kExitValidation;
}

int run_bench(int n, int trials) {
  bicap::require_player_count(n);
  if (trials < 1) trials = 1;
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start)
        .count();
  };
  const bicap::BiGame v = bicap::random_bigame(n, 1);
  json results = json::array();

  bicap::MoebiusRep m(n);
  {
    auto start = clock::now();
    for (int i = 0; i < trials; ++i) m = bicap::fast_moebius(v);
    results.push_back({{"op", "fast_moebius"}, {"avg_ms", ms_since(start) / trials}});
  }
  {
    auto start = clock::now();
    bicap::BiGame back(n);
    for (int i = 0; i < trials; ++i) back = bicap::fast_zeta(m);
    double err = 0.0;
    for (std::uint64_t idx = 0; idx < v.size(); ++idx)
      err = std::max(err, std::fabs(back[idx] - v[idx]));
    results.push_back({{"op", "fast_zeta"},
                       {"avg_ms", ms_since(start) / trials},
                       {"roundtrip_max_abs_err", err}});
  }
  if (n <= bicap::kDirectTransformMaxN) {
    auto start = clock::now();
    const bicap::MoebiusRep direct = bicap::moebius(v);
    double diff = 0.0;
    for (std::uint64_t idx = 0; idx < m.size(); ++idx)
      diff = std::max(diff, std::fabs(direct[idx] - m[idx]));
    results.push_back({{"op", "direct_moebius"},
                       {"avg_ms", ms_since(start)},
                       {"max_abs_diff_vs_fast", diff}});
  } else {
    results.push_back(
        {{"op", "direct_moebius"},
         {"refused", "n > " + std::to_string(bicap::kDirectTransformMaxN) +
                         " (direct path cap)"}});
  }
  if (n <= bicap::kMatrixMaxN) {
    auto start = clock::now();
    const bicap::TransformMatrix t(n);
    const std::vector<double> via = t.apply(v.values());
    double diff = 0.0;
    for (std::uint64_t idx = 0; idx < m.size(); ++idx)
      diff = std::max(diff, std::fabs(via[idx] - m[idx]));
    results.push_back({{"op", "matrix_moebius"},
                       {"avg_ms", ms_since(start)},
                       {"max_abs_diff_vs_fast", diff}});
  } else {
    results.push_back(
        {{"op", "matrix_moebius"},
         {"refused", "n > " + std::to_string(bicap::kMatrixMaxN) +
                         " (matrix materialization cap)"}});
  }
  {
    auto start = clock::now();
    const bicap::InteractionRep table = bicap::interaction_table(m);
    results.push_back({{"op", "interaction_table"},
                       {"avg_ms", ms_since(start)},
                       {"entries", table.size()}});
  }
  std::cout << json{{"n", n}, {"trials", trials}, {"results", results}}.dump(2)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-capacity toolkit: lattice transforms, derivatives, "
               "Shapley values and interaction indices on Q(N)"};
  app.require_subcommand(1);

  std::string game_path, out_path, pair_text, at_text;
  std::string left_text, right_text;
  std::string method = "fast", notation = "st";
  bool as_json = false, sparse = false, allow_large = false;
  bool moebius_path = false, all_pairs = false;
  int n = 3, trials = 3;
  std::uint64_t seed = 42;

  auto* validate = app.add_subcommand("validate", "check game axioms");
  validate->add_option("--game", game_path, "input JSON file")->required();
  validate->add_flag("--json", as_json, "machine-readable output");

  auto* info = app.add_subcommand("info", "summarize a document");
  info->add_option("--game", game_path, "input JSON file")->required();
  info->add_flag("--json", as_json, "machine-readable output");

  auto* moeb = app.add_subcommand("moebius", "Moebius transform of a bi-game");
  moeb->add_option("--game", game_path, "input JSON file")->required();
  moeb->add_option("--path", method, "fast|direct|matrix (default fast)");
  moeb->add_flag("--allow-large", allow_large,
                 "lift the n cap on the direct path");
  moeb->add_flag("--json", as_json, "emit the full JSON document");
  moeb->add_flag("--sparse", sparse, "sparse JSON encoding");
  moeb->add_option("--out", out_path, "also write the result to a file");

  auto* zeta_cmd = app.add_subcommand("zeta", "rebuild a bi-game from "
                                              "Moebius coefficients");
  zeta_cmd->add_option("--game", game_path, "input JSON file (kind moebius)")
      ->required();
  zeta_cmd->add_flag("--json", as_json, "emit the full JSON document");
  zeta_cmd->add_option("--out", out_path, "also write the result to a file");

  auto* deriv = app.add_subcommand("derivative", "(S,T)-derivative at a point");
  deriv->add_option("--game", game_path, "input JSON file")->required();
  deriv->add_option("--left", left_text, "players joining the defenders");
  deriv->add_option("--right", right_text, "players leaving the defeaters");
  deriv->add_option("--at", at_text, "evaluation point \"K|L\"")->required();

  auto* shap = app.add_subcommand("shapley", "bi-Shapley value");
  shap->add_option("--game", game_path, "input JSON file")->required();
  shap->add_flag("--moebius-path", moebius_path,
                 "compute through the Moebius transform");
  shap->add_flag("--json", as_json, "machine-readable output");

  auto* inter = app.add_subcommand("interaction", "bi-interaction index");
  inter->add_option("--game", game_path, "input JSON file")->required();
  inter->add_option("--pair", pair_text, "one pair \"S|T\"");
  inter->add_flag("--all", all_pairs, "full table over Q(N)");
  inter->add_option("--notation", notation,
                    "st (defender/defeater) or point (lattice)");
  inter->add_flag("--json", as_json, "machine-readable output");

  auto* self = app.add_subcommand("selfcheck", "seeded cross-verification "
                                               "suite");
  self->add_option("--n", n, "player count (default 3)");
  self->add_option("--seed", seed, "RNG seed (default 42)");

  auto* bench = app.add_subcommand("bench", "transform and index timings");
  bench->add_option("--n", n, "player count (default 3)");
  bench->add_option("--trials", trials, "repetitions per timing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitFormat;
  }

  try {
    if (validate->parsed()) return run_validate(game_path, as_json);
    if (info->parsed()) return run_info(game_path, as_json);
    if (moeb->parsed())
      return run_moebius(game_path, method, allow_large, as_json, sparse,
                         out_path);
    if (zeta_cmd->parsed()) return run_zeta(game_path, as_json, out_path);
    if (deriv->parsed())
      return run_derivative(game_path, left_text, right_text, at_text);
    if (shap->parsed()) return run_shapley(game_path, moebius_path, as_json);
    if (inter->parsed())
      return run_interaction(game_path, pair_text, all_pairs, notation,
                             as_json);
    if (self->parsed()) return run_selfcheck(n, seed);
    if (bench->parsed()) return run_bench(n, trials);
  } catch (const bicap::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  return kExitOk;
}
