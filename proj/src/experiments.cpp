#include "sepvol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "map_reduce.hpp"
#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"

namespace sepvol::experiments {

namespace {

void require_samples(std::uint64_t n, std::uint64_t minimum, const char* op) {
  if (n < minimum) {
    throw Error(ErrorCode::InsufficientSamples,
                std::string(op) + " needs at least " + std::to_string(minimum) + " samples, got " + std::to_string(n));
  }
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) edges[static_cast<std::size_t>(i)] = lo + width * i;
  edges.back() = hi;
  return edges;
}

std::size_t bin_index(double x, double lo, double hi, int bins) {
  const double pos = (x - lo) / (hi - lo) * bins;
  if (!(pos > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(pos), static_cast<std::size_t>(bins) - 1);
}

struct BinTally {
  std::vector<std::uint64_t> count;
  std::vector<std::uint64_t> ppt;
  std::vector<double> t_sum;
  std::uint64_t n = 0;
  std::uint64_t mixed_count = 0;
  std::uint64_t mixed_ppt = 0;
  double mixed_t_sum = 0.0;

  explicit BinTally(int bins)
      : count(static_cast<std::size_t>(bins)), ppt(static_cast<std::size_t>(bins)), t_sum(static_cast<std::size_t>(bins)) {}

  void add(std::size_t bin, bool is_ppt, double t) {
    ++count[bin];
    ppt[bin] += is_ppt ? 1 : 0;
    t_sum[bin] += t;
    ++n;
  }

  void merge(const BinTally& o) {
    for (std::size_t i = 0; i < count.size(); ++i) {
      count[i] += o.count[i];
      ppt[i] += o.ppt[i];
      t_sum[i] += o.t_sum[i];
    }
    n += o.n;
    mixed_count += o.mixed_count;
    mixed_ppt += o.mixed_ppt;
    mixed_t_sum += o.mixed_t_sum;
  }
};

BinnedConditional to_conditional(const BinTally& tally, const std::vector<double>& edges, Dims dims) {
  BinnedConditional out;
  out.dims = dims;
  out.n = tally.n;
  out.bins.resize(tally.count.size());
  for (std::size_t i = 0; i < out.bins.size(); ++i) {
    out.bins[i] = {edges[i], edges[i + 1], tally.count[i], tally.ppt[i], tally.t_sum[i]};
  }
  out.mixed_region_count = tally.mixed_count;
  out.mixed_region_ppt = tally.mixed_ppt;
  out.mixed_region_t_sum = tally.mixed_t_sum;
  return out;
}

struct PptTrial {
  double participation;
  bool is_ppt;
  double t;
};

PptTrial draw_and_test(Dims dims, rng::SeededStream& s, rng::SimplexPoint* spectrum_out = nullptr) {
  rng::SampledState st = rng::sample_state_with_spectrum(dims, s);
  const quantum::PptVerdict verdict = quantum::ppt_check(st.rho);
  PptTrial trial{quantum::participation_ratio(st.spectrum.weights), verdict.is_ppt, quantum::t_statistic(verdict)};
  if (spectrum_out != nullptr) *spectrum_out = std::move(st.spectrum);
  return trial;
}

struct Moments {
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void merge(const Moments& o) {
    n += o.n;
    hits += o.hits;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

}  // namespace

VolumeEstimate VolumeEstimate::from_counts(Dims dims, std::uint64_t n, std::uint64_t hits) {
  if (n == 0 || hits > n) throw Error(ErrorCode::InvalidArgument, "volume estimate needs 0 <= hits <= n, n > 0");
  VolumeEstimate e;
  e.dims = dims;
  e.n = n;
  e.hits = hits;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

std::string_view VolumeEstimate::label() const noexcept {
  return quantum::ppt_implies_separable(dims) ? "separable_volume" : "ppt_volume_upper_bound";
}

VolumeEstimate estimate_ppt_volume(Dims dims, std::uint64_t n, const RunOptions& run, const VolumeOptions& options) {
  validate_dims(dims);
  require_samples(n, kMinVolumeSamples, "estimate_ppt_volume");
  if (options.identity_mixture && !(*options.identity_mixture >= 0.0 && *options.identity_mixture <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "identity mixture weight must lie in [0, 1]");
  }
  const Moments total = detail::map_reduce_chunks(
      n, run, Moments{}, [&](rng::SeededStream& s, std::uint64_t count, Moments& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          DensityMatrix rho = rng::sample_density_matrix(dims, s);
          if (options.identity_mixture) rho = quantum::mix_with_identity(rho, *options.identity_mixture);
          acc.hits += quantum::ppt_check(rho, options.positivity_tol).is_ppt ? 1 : 0;
        }
        acc.n += count;
      });
  return VolumeEstimate::from_counts(dims, total.n, total.hits);
}

std::uint64_t scan_seed(std::uint64_t seed, Dims dims) {
  const auto tag = (static_cast<std::uint64_t>(dims.first) << 32) | static_cast<std::uint64_t>(dims.second);
  return rng::derive_seed(seed, tag);
}

std::vector<VolumeEstimate> scan_dimensions(std::span<const Dims> dims, std::uint64_t n, const RunOptions& run) {
  std::vector<VolumeEstimate> out;
  out.reserve(dims.size());
  for (const Dims& d : dims) {
    out.push_back(estimate_ppt_volume(d, n, RunOptions{scan_seed(run.seed, d), run.workers}));
  }
  return out;
}

ExponentialFit fit_exponential(std::span<const VolumeEstimate> estimates) {
  std::set<int> distinct;
  for (const VolumeEstimate& e : estimates) {
    if (!(e.p_hat > 0.0)) throw Error(ErrorCode::InvalidArgument, "fit_exponential: every p_hat must be > 0");
    distinct.insert(e.dims.total());
  }
  if (distinct.size() < 2) {
    throw Error(ErrorCode::DegenerateFit, "fit_exponential needs at least two distinct N values");
  }
  const bool weighted = std::all_of(estimates.begin(), estimates.end(),
                                    [](const VolumeEstimate& e) { return e.std_error > 0.0; });

  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const VolumeEstimate& e : estimates) {
    const double rel = e.std_error / e.p_hat;
    const double w = weighted ? 1.0 / (rel * rel) : 1.0;
    const double x = e.dims.total();
    const double y = std::log(e.p_hat);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double det = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / sw;

  ExponentialFit fit;
  fit.prefactor = std::exp(intercept);
  fit.rate = -slope;
  fit.points = estimates.size();
  for (const VolumeEstimate& e : estimates) {
    const double r = std::log(e.p_hat) - (intercept + slope * e.dims.total());
    fit.rss += r * r;
  }
  return fit;
}

int default_participation_bins(Dims dims) {
  return static_cast<int>(std::lround((dims.total() - 1) / kParticipationBinWidth));
}

BinnedConditional conditional_by_participation(Dims dims, std::uint64_t n, int bins, const RunOptions& run) {
  validate_dims(dims);
  if (bins < 4) throw Error(ErrorCode::InvalidArgument, "conditional_by_participation needs at least 4 bins");
  require_samples(n, 1, "conditional_by_participation");
  const double hi = dims.total();
  const double mixed_threshold = hi - 1.0;
  const std::vector<double> edges = uniform_edges(1.0, hi, bins);

  const BinTally tally = detail::map_reduce_chunks(
      n, run, BinTally(bins), [&](rng::SeededStream& s, std::uint64_t count, BinTally& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const PptTrial trial = draw_and_test(dims, s);
          acc.add(bin_index(trial.participation, 1.0, hi, bins), trial.is_ppt, trial.t);
          if (trial.participation >= mixed_threshold) {
            ++acc.mixed_count;
            acc.mixed_ppt += trial.is_ppt ? 1 : 0;
            acc.mixed_t_sum += trial.t;
          }
        }
      });
  BinnedConditional out = to_conditional(tally, edges, dims);
  out.statistic = Statistic::ParticipationRatio;
  return out;
}

double Histogram::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) m += density(i) * width(i);
  return m;
}

Histogram distribution_of_participation(Dims dims, std::uint64_t n, int bins, const RunOptions& run) {
  validate_dims(dims);
  if (bins < 4) throw Error(ErrorCode::InvalidArgument, "distribution_of_participation needs at least 4 bins");
  require_samples(n, 1, "distribution_of_participation");
  const int dim = dims.total();
  const double hi = dim;

  struct Counts {
    std::vector<std::uint64_t> c;
    void merge(const Counts& o) {
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    }
  };
  const Counts total = detail::map_reduce_chunks(
      n, run, Counts{std::vector<std::uint64_t>(static_cast<std::size_t>(bins))},
      [&](rng::SeededStream& s, std::uint64_t count, Counts& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const rng::SimplexPoint lambda = rng::sample_simplex(dim, s);
          ++acc.c[bin_index(quantum::participation_ratio(lambda.weights), 1.0, hi, bins)];
        }
      });
  return Histogram{uniform_edges(1.0, hi, bins), total.c, n};
}

std::vector<EntropyConditional> conditional_by_entropy(Dims dims, std::span<const double> qs, std::uint64_t n,
                                                       int bins, const RunOptions& run) {
  validate_dims(dims);
  if (qs.empty()) throw Error(ErrorCode::InvalidArgument, "conditional_by_entropy needs at least one q");
  for (double q : qs)
    if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "Renyi order q must be > 0");
  if (bins < 4) throw Error(ErrorCode::InvalidArgument, "conditional_by_entropy needs at least 4 bins");
  require_samples(n, 1, "conditional_by_entropy");
  const double hi = std::log(static_cast<double>(dims.total()));
  const std::vector<double> edges = uniform_edges(0.0, hi, bins);

  struct MultiTally {
    std::vector<BinTally> per_q;
    void merge(const MultiTally& o) {
      for (std::size_t i = 0; i < per_q.size(); ++i) per_q[i].merge(o.per_q[i]);
    }
  };
  const MultiTally total = detail::map_reduce_chunks(
      n, run, MultiTally{std::vector<BinTally>(qs.size(), BinTally(bins))},
      [&](rng::SeededStream& s, std::uint64_t count, MultiTally& acc) {
        rng::SimplexPoint spectrum;
        for (std::uint64_t i = 0; i < count; ++i) {
          const PptTrial trial = draw_and_test(dims, s, &spectrum);
          for (std::size_t k = 0; k < qs.size(); ++k) {
            const double h = quantum::renyi_entropy(spectrum.weights, qs[k]);
            acc.per_q[k].add(bin_index(h, 0.0, hi, bins), trial.is_ppt, trial.t);
          }
        }
      });

  std::vector<EntropyConditional> out;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    EntropyConditional ec;
    ec.table = to_conditional(total.per_q[k], edges, dims);
    ec.table.statistic = Statistic::Renyi;
    ec.table.q = qs[k];

    std::uint64_t running = 0;
    for (const ConditionalBin& b : ec.table.bins) {
      running += b.count;
      ec.cumulative.push_back(static_cast<double>(running) / static_cast<double>(n));
    }

    std::optional<std::size_t> last_bad;
    for (std::size_t i = 0; i < ec.table.bins.size(); ++i)
      if (ec.table.bins[i].ppt_count < ec.table.bins[i].count) last_bad = i;
    const std::size_t start = last_bad ? *last_bad + 1 : 0;
    for (std::size_t i = start; i < ec.table.bins.size(); ++i) {
      if (ec.table.bins[i].count == 0) continue;
      ec.threshold_found = true;
      ec.threshold_h = ec.table.bins[i].lo;
      ec.cumulative_at_threshold = i == 0 ? 0.0 : ec.cumulative[i - 1];
      break;
    }
    out.push_back(std::move(ec));
  }
  return out;
}

MeanEstimate mean_t(Dims dims, std::uint64_t n, const RunOptions& run) {
  validate_dims(dims);
  require_samples(n, kMinMeanTSamples, "mean_t");
  const Moments total = detail::map_reduce_chunks(
      n, run, Moments{}, [&](rng::SeededStream& s, std::uint64_t count, Moments& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const double t = quantum::t_statistic(rng::sample_density_matrix(dims, s));
          acc.sum += t;
          acc.sum_sq += t * t;
        }
        acc.n += count;
      });
  MeanEstimate m;
  m.n = total.n;
  const double nn = static_cast<double>(total.n);
  m.mean = total.sum / nn;
  const double var = std::max(0.0, (total.sum_sq - nn * m.mean * m.mean) / (nn - 1.0));
  m.std_error = std::sqrt(var / nn);
  return m;
}

}  // namespace sepvol::experiments
