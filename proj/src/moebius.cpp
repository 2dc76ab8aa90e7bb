#include "bicap/moebius.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bicap {

namespace {

void require_direct_size(int n, bool allow_large, const char* what) {
  if (n > kDirectTransformMaxN && !allow_large)
    throw std::domain_error(std::string(what) + ": direct path refused for n=" +
                            std::to_string(n) + " (cap " +
                            std::to_string(kDirectTransformMaxN) +
                            "); use the fast per-digit transform");
}

}  // namespace

// ---------------------------------------------------------------------------
// MoebiusRep

MoebiusRep::MoebiusRep(int n) : n_(n) {
  require_player_count(n);
  coeffs_.assign(pow3(n), 0.0);
}

MoebiusRep::MoebiusRep(int n, std::vector<double> coeffs) : n_(n) {
  require_player_count(n);
  if (coeffs.size() != pow3(n))
    throw std::invalid_argument(
        "Moebius coefficient array has length " +
        std::to_string(coeffs.size()) + ", expected 3^" + std::to_string(n));
  coeffs_ = std::move(coeffs);
}

double MoebiusRep::at(const BiSet& x) const {
  if (x.n() != n_) throw std::domain_error("Moebius/bi-set n mismatch");
  return coeffs_[to_index(x).value];
}

double& MoebiusRep::at(const BiSet& x) {
  if (x.n() != n_) throw std::domain_error("Moebius/bi-set n mismatch");
  return coeffs_[to_index(x).value];
}

std::vector<std::pair<BiSet, double>> nonzero_entries(const MoebiusRep& m,
                                                      double tol) {
  std::vector<std::pair<BiSet, double>> out;
  for (std::uint64_t idx = 0; idx < m.size(); ++idx)
    if (std::fabs(m[idx]) > tol)
      out.emplace_back(from_index({idx}, m.n()), m[idx]);
  return out;
}

// ---------------------------------------------------------------------------
// Moebius function and direct transforms

int mu(const BiSet& x, const BiSet& y) {
  if (x.n() != y.n()) throw std::domain_error("mu: player counts differ");
  if (!leq(x, y)) return 0;
  if ((x.neg().mask & y.pos().mask) != 0) return 0;
  int changed = std::popcount(y.pos().mask & ~x.pos().mask) +
                std::popcount(x.neg().mask & ~y.neg().mask);
  return (changed & 1) ? -1 : 1;
}

MoebiusRep moebius(const BiGame& v, bool allow_large) {
  require_direct_size(v.n(), allow_large, "moebius");
  const int n = v.n();
  const std::uint64_t size = pow3(n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  MoebiusRep out(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    const MaskPair target = decode_masks(idx, n);  // (A, A')
    const std::uint64_t free = full & ~target.pos & ~target.neg;
    long double acc = 0.0L;
    std::uint64_t b = target.pos;
    while (true) {  // B over subsets of A
      const int sign_b = std::popcount(target.pos & ~b) & 1;
      std::uint64_t x = free;
      while (true) {  // B' = A' u X with X over subsets of the neutral part
        const double val = v[encode_masks(b, target.neg | x, n)];
        acc += ((sign_b ^ (std::popcount(x) & 1)) != 0) ? -val : val;
        if (x == 0) break;
        x = (x - 1) & free;
      }
      if (b == 0) break;
      b = (b - 1) & target.pos;
    }
    out[idx] = static_cast<double>(acc);
  }
  return out;
}

BiGame zeta(const MoebiusRep& m, bool allow_large) {
  require_direct_size(m.n(), allow_large, "zeta");
  const int n = m.n();
  const std::uint64_t size = pow3(n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  BiGame out(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    const MaskPair target = decode_masks(idx, n);  // (A, A')
    long double acc = 0.0L;
    std::uint64_t b = target.pos;
    while (true) {  // (B, A' u Y) <= (A, A') with Y disjoint from B
      const std::uint64_t free = full & ~target.neg & ~b;
      std::uint64_t y = free;
      while (true) {
        acc += m[encode_masks(b, target.neg | y, n)];
        if (y == 0) break;
        y = (y - 1) & free;
      }
      if (b == 0) break;
      b = (b - 1) & target.pos;
    }
    out[idx] = static_cast<double>(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transform matrix

TransformMatrix::TransformMatrix(int n) : n_(n) {
  require_player_count(n);
  if (n > kMatrixMaxN)
    throw std::domain_error("transform matrix materialization capped at n=" +
                            std::to_string(kMatrixMaxN) + ", got n=" +
                            std::to_string(n));
  static constexpr std::int8_t kGen[3][3] = {{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}};
  dim_ = pow3(n);
  std::vector<std::int8_t> cur = {1, 0, 0, -1, 1, 0, 0, -1, 1};
  std::uint64_t cur_dim = 3;
  for (int k = 2; k <= n; ++k) {
    const std::uint64_t next_dim = cur_dim * 3;
    std::vector<std::int8_t> next(next_dim * next_dim, 0);
    for (int dy = 0; dy < 3; ++dy)
      for (int dx = 0; dx < 3; ++dx) {
        const std::int8_t g = kGen[dy][dx];
        if (g == 0) continue;
        for (std::uint64_t ry = 0; ry < cur_dim; ++ry) {
          const std::int8_t* src = cur.data() + ry * cur_dim;
          std::int8_t* dst =
              next.data() + (dy * cur_dim + ry) * next_dim + dx * cur_dim;
          for (std::uint64_t rx = 0; rx < cur_dim; ++rx)
            dst[rx] = static_cast<std::int8_t>(g * src[rx]);
        }
      }
    cur = std::move(next);
    cur_dim = next_dim;
  }
  entries_ = std::move(cur);
}

std::vector<double> TransformMatrix::apply(std::span<const double> vec) const {
  if (vec.size() != dim_)
    throw std::invalid_argument("transform matrix applied to vector of length " +
                                std::to_string(vec.size()) + ", expected " +
                                std::to_string(dim_));
  std::vector<double> out(dim_, 0.0);
  for (std::uint64_t row = 0; row < dim_; ++row) {
    const std::int8_t* r = entries_.data() + row * dim_;
    long double acc = 0.0L;
    for (std::uint64_t col = 0; col <= row; ++col) {  // lower triangular
      if (r[col] == 1)
        acc += vec[col];
      else if (r[col] == -1)
        acc -= vec[col];
    }
    out[row] = static_cast<double>(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fast per-digit transforms

namespace {

// One pass per ternary digit, ascending.  Moebius applies the generating
// element along the digit (first differences down the chain -1 < 0 < 1),
// zeta the inverse (prefix sums up the chain).
void fast_moebius_inplace(std::vector<double>& a, int n) {
  const std::uint64_t size = a.size();
  std::uint64_t step = 1;
  for (int p = 0; p < n; ++p, step *= 3) {
    for (std::uint64_t base = 0; base < size; base += 3 * step) {
      for (std::uint64_t j = base; j < base + step; ++j) {
        a[j + 2 * step] -= a[j + step];
        a[j + step] -= a[j];
      }
    }
  }
}

void fast_zeta_inplace(std::vector<double>& a, int n) {
  const std::uint64_t size = a.size();
  std::uint64_t step = 1;
  for (int p = 0; p < n; ++p, step *= 3) {
    for (std::uint64_t base = 0; base < size; base += 3 * step) {
      for (std::uint64_t j = base; j < base + step; ++j) {
        a[j + step] += a[j];
        a[j + 2 * step] += a[j + step];
      }
    }
  }
}

}  // namespace

MoebiusRep fast_moebius(const BiGame& v) {
  std::vector<double> a(v.values().begin(), v.values().end());
  fast_moebius_inplace(a, v.n());
  return MoebiusRep(v.n(), std::move(a));
}

BiGame fast_zeta(const MoebiusRep& m) {
  std::vector<double> a(m.coeffs().begin(), m.coeffs().end());
  fast_zeta_inplace(a, m.n());
  return BiGame(m.n(), std::move(a));
}

// ---------------------------------------------------------------------------
// k-additivity and special families

int k_additivity(const MoebiusRep& m, double tol) {
  const int n = m.n();
  int max_layer = 0;
  for (std::uint64_t idx = 0; idx < m.size(); ++idx) {
    if (std::fabs(m[idx]) <= tol) continue;
    const MaskPair mp = decode_masks(idx, n);
    max_layer = std::max(max_layer, n - std::popcount(mp.neg));
  }
  return max_layer;
}

MoebiusRep moebius_cpt(const Capacity& nu1, const Capacity& nu2) {
  if (nu1.n() != nu2.n())
    throw std::domain_error("moebius_cpt: capacities have different n");
  const int n = nu1.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  if (std::fabs(nu1[full] - 1.0) > 1e-9 || std::fabs(nu1[0]) > 1e-9 ||
      std::fabs(nu2[full] - 1.0) > 1e-9 || std::fabs(nu2[0]) > 1e-9)
    throw std::domain_error("moebius_cpt requires normalized capacities");
  const std::vector<double> m1 = classical_moebius(nu1);
  const std::vector<double> mbar2 = classical_moebius(conjugate(nu2));
  MoebiusRep out(n);
  for (std::uint64_t a = 1; a <= full; ++a)
    out[encode_masks(a, full & ~a, n)] = m1[a];  // vertices (A, A^c)
  for (std::uint64_t b = 0; b < full; ++b)
    out[encode_masks(0, b, n)] = mbar2[full & ~b];  // (empty, B), B proper
  out[0] = -1.0;  // (empty, N)
  return out;
}

std::vector<double> classical_moebius(const Capacity& nu) {
  const int n = nu.n();
  std::vector<double> m(nu.values().begin(), nu.values().end());
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t mask = 0; mask < m.size(); ++mask)
      if (mask & bit) m[mask] -= m[mask ^ bit];
  }
  return m;
}

Capacity classical_zeta(std::span<const double> m, int n) {
  require_player_count(n);
  if (m.size() != (std::uint64_t{1} << n))
    throw std::invalid_argument("classical_zeta: array length mismatch");
  std::vector<double> v(m.begin(), m.end());
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t mask = 0; mask < v.size(); ++mask)
      if (mask & bit) v[mask] += v[mask ^ bit];
  }
  return Capacity(n, std::move(v));
}

std::vector<double> co_moebius(const Capacity& nu) {
  const int n = nu.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<double> out(nu.size(), 0.0);
  for (std::uint64_t a = 0; a <= full; ++a) {
    // supersets of A^c are A^c u X with X inside A
    long double acc = 0.0L;
    std::uint64_t x = a;
    while (true) {
      const double val = nu[(full & ~a) | x];
      acc += ((std::popcount(a & ~x) & 1) != 0) ? -val : val;
      if (x == 0) break;
      x = (x - 1) & a;
    }
    out[a] = static_cast<double>(acc);
  }
  return out;
}

}  // namespace bicap
