#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <vector>

#include "sepvol/error.hpp"
#include "sepvol/parallel.hpp"
#include "sepvol/randgen.hpp"

namespace sepvol::detail {

inline void require_workers(int workers) {
  if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
}

// Runs body(stream, count, acc) once per chunk of kChunkSize samples, each
// chunk with its own accumulator and its own substream, then merges the
// accumulators in chunk order. Acc needs copy construction and merge().
template <class Acc, class Body>
Acc map_reduce_chunks(std::uint64_t n, const RunOptions& run, const Acc& init, Body body) {
  require_workers(run.workers);
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Acc> partial(chunks, init);
  std::vector<std::exception_ptr> errors(chunks);
  const auto count = static_cast<std::int64_t>(chunks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(run.workers)
  for (std::int64_t c = 0; c < count; ++c) {
    const auto chunk = static_cast<std::uint64_t>(c);
    try {
      rng::SeededStream stream(run.seed, chunk);
      const std::uint64_t begin = chunk * kChunkSize;
      body(stream, std::min(kChunkSize, n - begin), partial[chunk]);
    } catch (...) {
      errors[chunk] = std::current_exception();
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc total = init;
  for (const Acc& p : partial) total.merge(p);
  return total;
}

}  // namespace sepvol::detail
