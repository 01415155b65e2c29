#include "sepvol/reference.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"

namespace sepvol::reference {

namespace {

// Hands out the stream that owns each sample index in turn.
class StreamWalker {
 public:
  explicit StreamWalker(std::uint64_t seed) : seed_(seed) {}

  rng::SeededStream& at(std::uint64_t i) {
    const std::uint64_t chunk = i / kChunkSize;
    if (!stream_ || chunk != chunk_) {
      stream_.emplace(seed_, chunk);
      chunk_ = chunk;
    }
    return *stream_;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t chunk_ = 0;
  std::optional<rng::SeededStream> stream_;
};

}  // namespace

experiments::VolumeEstimate estimate_ppt_volume(Dims dims, std::uint64_t n, std::uint64_t seed) {
  validate_dims(dims);
  if (n < experiments::kMinVolumeSamples) throw Error(ErrorCode::InsufficientSamples, "too few samples");
  StreamWalker walker(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (quantum::ppt_check(rng::sample_density_matrix(dims, walker.at(i))).is_ppt) ++hits;
  }
  return experiments::VolumeEstimate::from_counts(dims, n, hits);
}

experiments::MeanEstimate mean_t(Dims dims, std::uint64_t n, std::uint64_t seed) {
  validate_dims(dims);
  if (n < experiments::kMinMeanTSamples) throw Error(ErrorCode::InsufficientSamples, "too few samples");
  StreamWalker walker(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = quantum::t_statistic(rng::sample_density_matrix(dims, walker.at(i)));
    sum += t;
    sum_sq += t * t;
  }
  const double nn = static_cast<double>(n);
  experiments::MeanEstimate m{n, sum / nn, 0.0};
  m.std_error = std::sqrt(std::max(0.0, (sum_sq - nn * m.mean * m.mean) / (nn - 1.0)) / nn);
  return m;
}

experiments::BinnedConditional conditional_by_participation(Dims dims, std::uint64_t n, int bins,
                                                            std::uint64_t seed) {
  validate_dims(dims);
  if (bins < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 bins");
  const int dim = dims.total();
  const double width = (dim - 1.0) / bins;

  experiments::BinnedConditional out;
  out.dims = dims;
  out.n = n;
  out.bins.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out.bins[static_cast<std::size_t>(b)].lo = 1.0 + width * b;
    out.bins[static_cast<std::size_t>(b)].hi = b + 1 == bins ? dim : 1.0 + width * (b + 1);
  }

  StreamWalker walker(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const rng::SampledState st = rng::sample_state_with_spectrum(dims, walker.at(i));
    const double r = quantum::participation_ratio(st.spectrum.weights);
    const quantum::PptVerdict v = quantum::ppt_check(st.rho);
    const double t = quantum::t_statistic(v);
    const double pos = (r - 1.0) / (dim - 1.0) * bins;
    const auto b = pos > 0.0 ? std::min(static_cast<std::size_t>(pos), static_cast<std::size_t>(bins) - 1) : 0;
    auto& bin = out.bins[b];
    ++bin.count;
    bin.ppt_count += v.is_ppt ? 1 : 0;
    bin.t_sum += t;
    if (r >= dim - 1.0) {
      ++out.mixed_region_count;
      out.mixed_region_ppt += v.is_ppt ? 1 : 0;
      out.mixed_region_t_sum += t;
    }
  }
  return out;
}

bounds::BoundReport upper_bound_mc_2x2(std::uint64_t samples, std::uint64_t seed) {
  if (samples < bounds::kMinUpperBoundSamples) throw Error(ErrorCode::InsufficientSamples, "too few samples");
  StreamWalker walker(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rng::SeededStream& s = walker.at(i);
    const double lambda1 = rng::sample_simplex(4, s).weights[0];
    const rng::OctantPoint a = rng::sample_octant(2, s);
    const double a1 = a.coeffs[0], a2 = a.coeffs[1];
    if (lambda1 > 1.0 / (1.0 + a1 * a2) && lambda1 > std::max(a1 * a1, a2 * a2)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  bounds::BoundReport r;
  r.name = "upper_bound_mc";
  r.total_dimension = 4;
  r.dims = Dims{2, 2};
  r.value = 1.0 - 4.0 * p;
  r.std_error = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  r.kind = bounds::BoundKind::UpperOnSeparableVolume;
  return r;
}

}  // namespace sepvol::reference
