#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sepvol/density_matrix.hpp"
#include "sepvol/parallel.hpp"

namespace sepvol::bounds {

enum class BoundKind {
  LowerOnSeparableVolume,
  LowerOnPptVolume,
  UpperOnSeparableVolume,
  UpperOnB,  // ceiling on the inseparable-volume bound b, not on the volume itself
};

std::string_view to_string(BoundKind kind) noexcept;

struct BoundReport {
  std::string name;
  int total_dimension = 0;
  std::optional<Dims> dims;
  double value = 0.0;
  double std_error = 0.0;  // 0 for closed forms
  BoundKind kind = BoundKind::LowerOnPptVolume;
};

/// Relative volume of the largest ball around I/N inside the spectrum
/// simplex: (N-1)! pi^{(N-1)/2} / (N^{N/2} (N-1)^{(N-1)/2} Gamma((N+1)/2)).
/// Every state with R >= N-1 lies inside it and is PPT.
BoundReport tau_lower_bound(int n);

/// 2/(2+N): largest p with (1-p) I/N + p sigma PPT for every sigma.
double epsilon_ball(int n);

/// (1 - 1/K)^{N-1} with K = min(N1, N2).
BoundReport corner_bound(Dims dims);

inline constexpr std::uint64_t kMinUpperBoundSamples = 10'000;

/// 1 - E[4 * 1[L1 > 1/(1 + a1 a2)] * 1[L1 > max(a1^2, a2^2)]] with L uniform
/// on the 3-simplex and (a1, a2) arc-uniform on the quarter circle. A
/// one-sided Monte Carlo bound: add 3 stderr before quoting it as a ceiling.
BoundReport upper_bound_mc_2x2(std::uint64_t samples, const RunOptions& run);

/// 6 pi R^-2 sqrt(1/R - 1/4), the N = 4 participation-ratio density, valid
/// on (3, 4] only (OutOfDomain elsewhere).
double participation_density_n4(double r);

/// Integral of participation_density_n4 over [lo, hi], 3 <= lo <= hi <= 4:
/// 4 pi ((1/lo - 1/4)^{3/2} - (1/hi - 1/4)^{3/2}).
double participation_mass_n4(double lo, double hi);

}  // namespace sepvol::bounds
