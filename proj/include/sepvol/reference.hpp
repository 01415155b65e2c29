#pragma once

// Serial reference implementations of the Monte Carlo kernels. They walk the
// samples in index order with one running accumulator, drawing sample i from
// stream (seed, i / kChunkSize), so counts agree exactly with the parallel
// kernels and floating-point sums agree up to summation order.

#include <cstdint>

#include "sepvol/bounds.hpp"
#include "sepvol/experiments.hpp"

namespace sepvol::reference {

experiments::VolumeEstimate estimate_ppt_volume(Dims dims, std::uint64_t n, std::uint64_t seed);
experiments::MeanEstimate mean_t(Dims dims, std::uint64_t n, std::uint64_t seed);
experiments::BinnedConditional conditional_by_participation(Dims dims, std::uint64_t n, int bins,
                                                            std::uint64_t seed);
bounds::BoundReport upper_bound_mc_2x2(std::uint64_t samples, std::uint64_t seed);

}  // namespace sepvol::reference
