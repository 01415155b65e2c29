#pragma once

// Monte Carlo campaigns over random density matrices. Every campaign is a
// chunked map-reduce (see parallel.hpp): results depend on (seed, n) only,
// never on the worker count or scheduling order.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sepvol/density_matrix.hpp"
#include "sepvol/parallel.hpp"

namespace sepvol::experiments {

inline constexpr std::uint64_t kMinVolumeSamples = 1'000;
inline constexpr std::uint64_t kMinMeanTSamples = 10'000;
inline constexpr double kParticipationBinWidth = 0.05;
inline constexpr int kEntropyBins = 60;

struct VolumeEstimate {
  Dims dims;
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/n)

  static VolumeEstimate from_counts(Dims dims, std::uint64_t n, std::uint64_t hits);
  /// "separable_volume" for 2x2/2x3, else "ppt_volume_upper_bound".
  std::string_view label() const noexcept;
};

struct VolumeOptions {
  /// When set, each sample is replaced by (1-p) I/N + p rho before the test.
  std::optional<double> identity_mixture;
  double positivity_tol = kPositivityTol;
};

VolumeEstimate estimate_ppt_volume(Dims dims, std::uint64_t n, const RunOptions& run,
                                   const VolumeOptions& options = {});

/// One estimate per entry; entry (N1, N2) runs on seed derive_seed(seed,
/// N1 << 32 | N2), so each pair is independent of the others and of its
/// position in the list.
std::vector<VolumeEstimate> scan_dimensions(std::span<const Dims> dims, std::uint64_t n, const RunOptions& run);

/// Seed used by scan_dimensions for one entry.
std::uint64_t scan_seed(std::uint64_t seed, Dims dims);

struct ExponentialFit {
  double prefactor = 0.0;  // A
  double rate = 0.0;       // gamma in A exp(-gamma N)
  double rss = 0.0;        // unweighted sum of squared log residuals
  std::size_t points = 0;
};

/// Weighted least squares of ln p_hat against N with weights
/// (p_hat / std_error)^2; uniform weights when any std_error is zero.
ExponentialFit fit_exponential(std::span<const VolumeEstimate> estimates);

struct ConditionalBin {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
  std::uint64_t ppt_count = 0;
  double t_sum = 0.0;

  double ppt_fraction() const { return count == 0 ? 0.0 : static_cast<double>(ppt_count) / count; }
  double mean_t() const { return count == 0 ? 0.0 : t_sum / static_cast<double>(count); }
};

enum class Statistic { ParticipationRatio, Renyi };

struct BinnedConditional {
  Statistic statistic = Statistic::ParticipationRatio;
  double q = 2.0;  // Renyi order when statistic == Renyi
  Dims dims;
  std::uint64_t n = 0;
  std::vector<ConditionalBin> bins;
  /// Samples with R >= N - 1 (all PPT by the participation-ratio theorem).
  std::uint64_t mixed_region_count = 0;
  std::uint64_t mixed_region_ppt = 0;
  double mixed_region_t_sum = 0.0;
};

/// Bin count giving width kParticipationBinWidth on [1, N].
int default_participation_bins(Dims dims);

BinnedConditional conditional_by_participation(Dims dims, std::uint64_t n, int bins, const RunOptions& run);

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;

  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double density(std::size_t i) const { return static_cast<double>(counts[i]) / (static_cast<double>(n) * width(i)); }
  double mass() const;
};

/// Histogram of R over spectra drawn uniformly from the simplex (the unitary
/// part of the state does not change R).
Histogram distribution_of_participation(Dims dims, std::uint64_t n, int bins, const RunOptions& run);

struct EntropyConditional {
  BinnedConditional table;
  std::vector<double> cumulative;  // D(H) at the upper edge of each bin
  bool threshold_found = false;
  double threshold_h = 0.0;              // lower edge of the first bin after the last non-PPT sample
  double cumulative_at_threshold = 0.0;  // fraction of samples below threshold_h
};

/// One table per q on [0, ln N].
std::vector<EntropyConditional> conditional_by_entropy(Dims dims, std::span<const double> qs, std::uint64_t n,
                                                       int bins, const RunOptions& run);

struct MeanEstimate {
  std::uint64_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

MeanEstimate mean_t(Dims dims, std::uint64_t n, const RunOptions& run);

}  // namespace sepvol::experiments
