#pragma once

#include <cstdint>

#include "bicap/game.hpp"

namespace bicap {

/// Seeded generators for test instances.  All draws come from a fixed 64-bit
/// generator with a hand-rolled uniform mapping, so identical seeds give
/// identical games on every platform.

/// Normalized random capacity: one uniform per coalition, running max along a
/// linear extension of set inclusion, scaled so nu(N) = 1.
Capacity random_capacity(int n, std::uint64_t seed);

/// Unconstrained bi-cooperative game: uniform values in [-1, 1] with
/// v(empty,empty) = 0.
BiGame random_bigame(int n, std::uint64_t seed);

/// Normalized random bi-capacity: running max along the ternary order, then a
/// two-piece rescale pinning v(empty,empty) = 0, v(N,empty) = 1,
/// v(empty,N) = -1.
BiGame random_bicapacity(int n, std::uint64_t seed);

}  // namespace bicap
