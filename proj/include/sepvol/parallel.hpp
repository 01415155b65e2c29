#pragma once

#include <cstdint>

namespace sepvol {

/// Sample index i of a campaign is drawn from stream (seed, i / kChunkSize).
/// The layout does not depend on the worker count, so every campaign result
/// is a function of (seed, n) alone.
inline constexpr std::uint64_t kChunkSize = 4096;

struct RunOptions {
  std::uint64_t seed = 0;
  int workers = 1;
};

}  // namespace sepvol
