#include "bicap/game.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace bicap {

namespace {

void warn_if_large_dense(int n) {
  static std::atomic<bool> warned{false};
  if (n > kDenseWarnPlayers && !warned.exchange(true)) {
    std::fprintf(stderr,
                 "bicap: dense storage for n=%d holds %llu entries; "
                 "operations may be slow\n",
                 n, static_cast<unsigned long long>(pow3(n)));
  }
}

constexpr std::size_t kMaxStoredViolations = 1000;

}  // namespace

// ---------------------------------------------------------------------------
// Capacity

Capacity::Capacity(int n) : n_(n) {
  require_player_count(n);
  values_.assign(std::uint64_t{1} << n, 0.0);
}

Capacity::Capacity(int n, std::vector<double> values) : n_(n) {
  require_player_count(n);
  if (values.size() != (std::uint64_t{1} << n))
    throw std::invalid_argument(
        "capacity value array has length " + std::to_string(values.size()) +
        ", expected 2^" + std::to_string(n));
  values_ = std::move(values);
}

double Capacity::at(const PlayerSet& s) const {
  if (s.n != n_) throw std::domain_error("capacity/player-set n mismatch");
  return values_[s.mask];
}

CapacityReport validate(const Capacity& nu, double tol) {
  CapacityReport r;
  r.is_game = std::fabs(nu[0]) <= tol;
  const int n = nu.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    for (int i = 0; i < n; ++i) {
      std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      if (nu[mask] - nu[mask | bit] > tol) {
        ++r.violation_count;
        if (r.violations.size() < kMaxStoredViolations)
          r.violations.emplace_back(PlayerSet{mask, n},
                                    PlayerSet{mask | bit, n});
      }
    }
  }
  r.is_capacity = r.is_game && r.violation_count == 0;
  r.is_normalized = std::fabs(nu[size - 1] - 1.0) <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// BiGame

BiGame::BiGame(int n) : n_(n) {
  require_player_count(n);
  warn_if_large_dense(n);
  values_.assign(pow3(n), 0.0);
}

BiGame::BiGame(int n, std::vector<double> values) : n_(n) {
  require_player_count(n);
  if (values.size() != pow3(n))
    throw std::invalid_argument(
        "bi-game value array has length " + std::to_string(values.size()) +
        ", expected 3^" + std::to_string(n));
  warn_if_large_dense(n);
  values_ = std::move(values);
}

double BiGame::at(const BiSet& x) const {
  if (x.n() != n_) throw std::domain_error("bi-game/bi-set n mismatch");
  return values_[to_index(x).value];
}

double& BiGame::at(const BiSet& x) {
  if (x.n() != n_) throw std::domain_error("bi-game/bi-set n mismatch");
  return values_[to_index(x).value];
}

std::uint64_t BiGame::origin_index() const {
  // (empty, empty) has every ternary digit equal to 1.
  return (pow3(n_) - 1) / 2;
}

ValidationReport validate(const BiGame& v, double tol) {
  ValidationReport r;
  const int n = v.n();
  const std::uint64_t size = pow3(n);
  r.origin_value = v[v.origin_index()];
  r.is_game = std::fabs(r.origin_value) <= tol;
  // Covering pairs: lower one ternary digit by one step.
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    std::uint64_t place = 1;
    std::uint64_t rest = idx;
    for (int p = 0; p < n; ++p, place *= 3) {
      int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit == 0) continue;
      std::uint64_t pred = idx - place;
      if (v[pred] - v[idx] > tol) {
        ++r.violation_count;
        if (r.violations.size() < kMaxStoredViolations)
          r.violations.emplace_back(from_index({pred}, n),
                                    from_index({idx}, n));
      }
    }
  }
  r.is_bicapacity = r.is_game && r.violation_count == 0;
  r.is_normalized = std::fabs(v[size - 1] - 1.0) <= tol &&
                    std::fabs(v[0] + 1.0) <= tol;
  return r;
}

BiGame make_cpt(const Capacity& nu1, const Capacity& nu2) {
  if (nu1.n() != nu2.n())
    throw std::domain_error("make_cpt: capacities have different n");
  const int n = nu1.n();
  BiGame v(n);
  const std::uint64_t size = pow3(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    MaskPair mp = decode_masks(idx, n);
    v[idx] = nu1[mp.pos] - nu2[mp.neg];
  }
  v.is_capacity = nu1.is_capacity && nu2.is_capacity;
  v.is_normalized = nu1.is_normalized && nu2.is_normalized;
  return v;
}

BiGame make_additive(std::span<const double> w1, std::span<const double> w2) {
  if (w1.size() != w2.size() || w1.empty())
    throw std::domain_error("make_additive: weight vectors must share length");
  const int n = static_cast<int>(w1.size());
  BiGame v(n);
  const std::uint64_t size = pow3(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    std::uint64_t rest = idx;
    double val = 0.0;
    for (int i = 0; i < n; ++i) {
      int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit == 2)
        val += w1[i];
      else if (digit == 0)
        val -= w2[i];
    }
    v[idx] = val;
  }
  bool nonneg = true;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    nonneg = nonneg && w1[i] >= 0.0 && w2[i] >= 0.0;
    s1 += w1[i];
    s2 += w2[i];
  }
  v.is_capacity = nonneg;
  v.is_normalized = std::fabs(s1 - 1.0) <= 1e-12 && std::fabs(s2 - 1.0) <= 1e-12;
  return v;
}

BiGame bi_unanimity(const BiSet& center) {
  const int n = center.n();
  BiGame v(n);
  const std::uint64_t size = pow3(n);
  const std::uint64_t s_mask = center.pos().mask;
  const std::uint64_t sp_mask = center.neg().mask;
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    MaskPair mp = decode_masks(idx, n);
    // 1 iff T contains S and T' is contained in S'.
    v[idx] = ((mp.pos & s_mask) == s_mask && (mp.neg & ~sp_mask) == 0) ? 1.0
                                                                       : 0.0;
  }
  v.is_capacity = !center.pos().is_empty();
  v.is_normalized = false;
  return v;
}

bool ternary_voting_check(const BiGame& v, bool exempt_origin, double tol) {
  const std::uint64_t origin = v.origin_index();
  for (std::uint64_t idx = 0; idx < v.size(); ++idx) {
    if (exempt_origin && idx == origin) continue;
    double val = v[idx];
    if (std::fabs(val - 1.0) > tol && std::fabs(val + 1.0) > tol) return false;
  }
  return true;
}

Capacity conjugate(const Capacity& nu) {
  const int n = nu.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  if (std::fabs(nu[full] - 1.0) > 1e-9 || std::fabs(nu[0]) > 1e-9)
    throw std::domain_error("conjugate requires a normalized capacity");
  Capacity out(n);
  for (std::uint64_t mask = 0; mask <= full; ++mask)
    out[mask] = 1.0 - nu[full & ~mask];
  out.is_capacity = nu.is_capacity;
  out.is_normalized = nu.is_normalized;
  return out;
}

Capacity unanimity(const PlayerSet& b) {
  const int n = b.n;
  Capacity out(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < size; ++mask)
    out[mask] = ((mask & b.mask) == b.mask) ? 1.0 : 0.0;
  out.is_capacity = !b.is_empty();
  out.is_normalized = !b.is_empty();
  return out;
}

BiGame embed_capacity(const Capacity& nu, EmbedMode mode) {
  const int n = nu.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  BiGame v(n);
  const std::uint64_t size = pow3(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    MaskPair mp = decode_masks(idx, n);
    v[idx] = mode == EmbedMode::defender_only ? nu[mp.pos]
                                              : nu[full & ~mp.neg];
  }
  v.is_capacity = nu.is_capacity;
  v.is_normalized = false;
  return v;
}

}  // namespace bicap
