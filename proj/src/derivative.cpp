#include "bicap/derivative.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace bicap {

DerivativeSpec::DerivativeSpec(PlayerSet s, PlayerSet t)
    : s_(std::move(s)), t_(std::move(t)) {
  if (s_.n != t_.n)
    throw std::domain_error("DerivativeSpec: player counts differ");
  if ((s_.mask & t_.mask) != 0)
    throw std::invalid_argument("DerivativeSpec: S and T overlap");
}

DerivativeSpec DerivativeSpec::at_point(const BiSet& st) {
  return DerivativeSpec(st.pos(), st.neutral());
}

BiSet DerivativeSpec::point() const {
  return {s_, (s_ | t_).complement()};
}

namespace {

void check_derivative_domain(const DerivativeSpec& spec, const BiSet& at) {
  if (spec.n() != at.n())
    throw std::domain_error("derivative: player counts differ");
  const std::uint64_t s = spec.s_set().mask;
  if (((at.pos().mask | at.neg().mask) & s) != 0)
    throw std::domain_error("derivative at " + to_string(at) +
                            ": point must avoid S=" +
                            to_string(spec.s_set()));
  if ((spec.t_set().mask & ~at.neg().mask) != 0)
    throw std::domain_error("derivative at " + to_string(at) +
                            ": negative side must contain T=" +
                            to_string(spec.t_set()));
}

}  // namespace

namespace detail {

double delta_unchecked(const BiGame& v, std::uint64_t s_mask,
                       std::uint64_t t_mask, std::uint64_t k_mask,
                       std::uint64_t l_mask) {
  const int n = v.n();
  const int s_size = std::popcount(s_mask);
  const int t_size = std::popcount(t_mask);
  long double acc = 0.0L;
  std::uint64_t sp = s_mask;
  while (true) {
    const int sign_s = (s_size - std::popcount(sp)) & 1;
    std::uint64_t tp = t_mask;
    while (true) {
      const int sign = sign_s ^ ((t_size - std::popcount(tp)) & 1);
      const double val = v[encode_masks(k_mask | sp, l_mask & ~tp, n)];
      acc += sign != 0 ? -val : val;
      if (tp == 0) break;
      tp = (tp - 1) & t_mask;
    }
    if (sp == 0) break;
    sp = (sp - 1) & s_mask;
  }
  return static_cast<double>(acc);
}

}  // namespace detail

double delta_left(const BiGame& v, int i, const BiSet& at) {
  if (at.n() != v.n()) throw std::domain_error("delta_left: n mismatch");
  PlayerSet pi = PlayerSet::single(i, v.n());
  if (at.pos().contains(i) || at.neg().contains(i))
    throw std::domain_error("delta_left: point " + to_string(at) +
                            " must lie in Q(N\\" + std::to_string(i) + ")");
  return v.at(BiSet(at.pos() | pi, at.neg())) - v.at(at);
}

double delta_right(const BiGame& v, int i, const BiSet& at) {
  if (at.n() != v.n()) throw std::domain_error("delta_right: n mismatch");
  PlayerSet pi = PlayerSet::single(i, v.n());
  if (!at.neg().contains(i))
    throw std::domain_error("delta_right: player " + std::to_string(i) +
                            " must sit in the negative side of " +
                            to_string(at));
  return v.at(BiSet(at.pos(), at.neg() - pi)) - v.at(at);
}

double delta(const BiGame& v, const DerivativeSpec& spec, const BiSet& at) {
  if (v.n() != spec.n()) throw std::domain_error("delta: n mismatch");
  check_derivative_domain(spec, at);
  return detail::delta_unchecked(v, spec.s_set().mask, spec.t_set().mask,
                                 at.pos().mask, at.neg().mask);
}

double delta_from_moebius(const MoebiusRep& m, const DerivativeSpec& spec,
                          const BiSet& at) {
  if (m.n() != spec.n())
    throw std::domain_error("delta_from_moebius: n mismatch");
  check_derivative_domain(spec, at);
  const int n = m.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::uint64_t s = spec.s_set().mask;
  const std::uint64_t t = spec.t_set().mask;
  // Interval [(S, N\(S u T)), (S u K, L\T)]: S' = S u X with X inside K, and
  // T' between L\T and N\(S u T), disjoint from S'.
  const std::uint64_t lo_neg = full & ~(s | t);
  const std::uint64_t hi_neg = at.neg().mask & ~t;
  long double acc = 0.0L;
  std::uint64_t x = at.pos().mask;
  while (true) {
    const std::uint64_t sp = s | x;
    const std::uint64_t free = lo_neg & ~hi_neg & ~sp;
    std::uint64_t y = free;
    while (true) {
      acc += m[encode_masks(sp, hi_neg | y, n)];
      if (y == 0) break;
      y = (y - 1) & free;
    }
    if (x == 0) break;
    x = (x - 1) & at.pos().mask;
  }
  return static_cast<double>(acc);
}

MoebiusRep moebius_via_derivative(const BiGame& v, bool allow_large) {
  if (v.n() > kDirectTransformMaxN && !allow_large)
    throw std::domain_error(
        "moebius_via_derivative: direct path refused for n=" +
        std::to_string(v.n()) + " (cap " +
        std::to_string(kDirectTransformMaxN) + ")");
  const int n = v.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  MoebiusRep out(n);
  for (std::uint64_t idx = 0; idx < out.size(); ++idx) {
    const MaskPair mp = decode_masks(idx, n);
    // m(S,T) = Delta_{(S,T)} v(empty, N\S)
    out[idx] = detail::delta_unchecked(v, mp.pos, full & ~(mp.pos | mp.neg),
                                       0, full & ~mp.pos);
  }
  return out;
}

double classical_delta(const Capacity& nu, const PlayerSet& s,
                       const PlayerSet& t) {
  if (nu.n() != s.n || s.n != t.n)
    throw std::domain_error("classical_delta: n mismatch");
  if ((s.mask & t.mask) != 0)
    throw std::domain_error("classical_delta: T must avoid S");
  const int s_size = s.size();
  long double acc = 0.0L;
  std::uint64_t l = s.mask;
  while (true) {
    const double val = nu[l | t.mask];
    acc += (((s_size - std::popcount(l)) & 1) != 0) ? -val : val;
    if (l == 0) break;
    l = (l - 1) & s.mask;
  }
  return static_cast<double>(acc);
}

}  // namespace bicap
