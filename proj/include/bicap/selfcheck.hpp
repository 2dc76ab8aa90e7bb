#pragma once

#include <cstdint>
#include <iosfwd>

namespace bicap {

/// Runs the seeded cross-verification suite at the given size and prints one
/// pass/fail line per property.  Properties that require the direct
/// reference paths are skipped above their size caps.  Returns true iff
/// everything checked passed.
bool selfcheck(int n, std::uint64_t seed, std::ostream& out);

}  // namespace bicap
