#include "sepvol/bounds.hpp"

#include <cmath>
#include <numbers>

#include "map_reduce.hpp"
#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"

namespace sepvol::bounds {

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::LowerOnSeparableVolume: return "lower_on_sep_volume";
    case BoundKind::LowerOnPptVolume: return "lower_on_ppt_volume";
    case BoundKind::UpperOnSeparableVolume: return "upper_on_sep_volume";
    case BoundKind::UpperOnB: return "upper_on_b";
  }
  return "unknown";
}

BoundReport tau_lower_bound(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "tau_lower_bound: N must be >= 2");
  const double nn = n;
  const double log_tau = std::lgamma(nn) + 0.5 * (nn - 1.0) * std::log(std::numbers::pi) -
                         0.5 * nn * std::log(nn) - 0.5 * (nn - 1.0) * std::log(nn - 1.0) -
                         std::lgamma(0.5 * (nn + 1.0));
  BoundReport r;
  r.name = "tau_lower_bound";
  r.total_dimension = n;
  r.value = std::exp(log_tau);
  r.kind = (n == 4 || n == 6) ? BoundKind::LowerOnSeparableVolume : BoundKind::LowerOnPptVolume;
  return r;
}

double epsilon_ball(int n) {
  bool composite = false;
  for (int d = 2; d * d <= n; ++d) composite = composite || n % d == 0;
  if (n < 4 || !composite) {
    throw Error(ErrorCode::InvalidArgument, "epsilon_ball: N must be composite and >= 4, got " + std::to_string(n));
  }
  return 2.0 / (2.0 + n);
}

BoundReport corner_bound(Dims dims) {
  validate_dims(dims, static_cast<int>(mat::kMaxDimension));
  const int k = std::min(dims.first, dims.second);
  BoundReport r;
  r.name = "corner_bound";
  r.total_dimension = dims.total();
  r.dims = dims;
  r.value = std::pow(1.0 - 1.0 / k, dims.total() - 1);
  r.kind = BoundKind::UpperOnB;
  return r;
}

namespace {

struct HitCounter {
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  void merge(const HitCounter& o) {
    n += o.n;
    hits += o.hits;
  }
};

}  // namespace

BoundReport upper_bound_mc_2x2(std::uint64_t samples, const RunOptions& run) {
  if (samples < kMinUpperBoundSamples) {
    throw Error(ErrorCode::InsufficientSamples,
                "upper_bound_mc_2x2 needs at least " + std::to_string(kMinUpperBoundSamples) + " samples");
  }
  const HitCounter total = detail::map_reduce_chunks(
      samples, run, HitCounter{}, [](rng::SeededStream& s, std::uint64_t count, HitCounter& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const double lambda1 = rng::sample_simplex(4, s).weights[0];
          const rng::OctantPoint a = rng::sample_octant(2, s);
          const double a1 = a.coeffs[0];
          const double a2 = a.coeffs[1];
          const bool lemma5 = lambda1 > 1.0 / (1.0 + a1 * a2);
          const bool lemma6 = lambda1 > std::max(a1 * a1, a2 * a2);
          acc.hits += (lemma5 && lemma6) ? 1 : 0;
        }
        acc.n += count;
      });

  const double p = static_cast<double>(total.hits) / static_cast<double>(total.n);
  BoundReport r;
  r.name = "upper_bound_mc";
  r.total_dimension = 4;
  r.dims = Dims{2, 2};
  r.value = 1.0 - 4.0 * p;
  r.std_error = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(total.n));
  r.kind = BoundKind::UpperOnSeparableVolume;
  return r;
}

double participation_density_n4(double r) {
  if (!(r > 3.0 && r <= 4.0)) {
    throw Error(ErrorCode::OutOfDomain, "participation_density_n4 is defined on (3, 4] only");
  }
  return 6.0 * std::numbers::pi / (r * r) * std::sqrt(std::max(0.0, 1.0 / r - 0.25));
}

double participation_mass_n4(double lo, double hi) {
  if (!(lo >= 3.0 && lo <= hi && hi <= 4.0)) {
    throw Error(ErrorCode::OutOfDomain, "participation_mass_n4 needs 3 <= lo <= hi <= 4");
  }
  const auto g = [](double r) { return std::pow(std::max(0.0, 1.0 / r - 0.25), 1.5); };
  return 4.0 * std::numbers::pi * (g(lo) - g(hi));
}

}  // namespace sepvol::bounds
