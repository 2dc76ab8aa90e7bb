#include "bicap/random.hpp"

#include <algorithm>
#include <random>

namespace bicap {

namespace {

double next_uniform(std::mt19937_64& rng) {
  // 53 mantissa bits; identical across platforms, unlike the distributions.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Capacity random_capacity(int n, std::uint64_t seed) {
  require_player_count(n);
  std::mt19937_64 rng(seed);
  const std::uint64_t size = std::uint64_t{1} << n;
  Capacity nu(n);
  // Mask order is a linear extension of inclusion (A \ {i} < A numerically),
  // so one pass of running max makes the values monotone.
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    double val = next_uniform(rng);
    for (int i = 0; i < n; ++i) {
      std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) val = std::max(val, nu[mask ^ bit]);
    }
    nu[mask] = val;
  }
  double top = nu[size - 1];
  for (std::uint64_t mask = 1; mask < size; ++mask) nu[mask] /= top;
  nu.is_capacity = true;
  nu.is_normalized = true;
  return nu;
}

BiGame random_bigame(int n, std::uint64_t seed) {
  require_player_count(n);
  std::mt19937_64 rng(seed);
  BiGame v(n);
  for (std::uint64_t idx = 0; idx < v.size(); ++idx)
    v[idx] = 2.0 * next_uniform(rng) - 1.0;
  v[v.origin_index()] = 0.0;
  return v;
}

BiGame random_bicapacity(int n, std::uint64_t seed) {
  require_player_count(n);
  std::mt19937_64 rng(seed);
  BiGame g(n);
  const std::uint64_t size = g.size();
  // Running max along the ternary order (a linear extension of the lattice
  // order); the tiny index ramp keeps the maxima strict so the rescale below
  // never divides by zero.
  for (std::uint64_t idx = 1; idx < size; ++idx) {
    double val = next_uniform(rng);
    std::uint64_t place = 1;
    std::uint64_t rest = idx;
    for (int p = 0; p < n; ++p, place *= 3) {
      int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit > 0) val = std::max(val, g[idx - place]);
    }
    g[idx] = val + 1e-9;
  }
  const double origin = g[g.origin_index()];
  const double top = g[size - 1];
  // Increasing piecewise-linear map: fixes the origin at 0, top at 1,
  // bottom at -1; monotonicity is preserved.
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    double val = g[idx];
    g[idx] = val >= origin ? (val - origin) / (top - origin)
                           : (val - origin) / origin;
  }
  g[g.origin_index()] = 0.0;
  g[0] = -1.0;
  g[size - 1] = 1.0;
  g.is_capacity = true;
  g.is_normalized = true;
  return g;
}

}  // namespace bicap
