#include "sepvol/randgen.hpp"

#include <cmath>
#include <numbers>

#include "sepvol/error.hpp"

namespace sepvol::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr int kPhiloxRounds = 10;

void require_at_least(int value, int minimum, const char* what) {
  if (value < minimum) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " must be >= " + std::to_string(minimum) + ", got " + std::to_string(value));
  }
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> x, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < kPhiloxRounds; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
  }
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {}

void SeededStream::refill() {
  const std::array<std::uint32_t, 4> counter{
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_index_), static_cast<std::uint32_t>(stream_index_ >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32(counter, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
  ++block_;
}

std::uint64_t SeededStream::next_u64() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

double SeededStream::next_uniform() {
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

double SeededStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_gaussian_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SimplexPoint simplex_from_uniforms(std::span<const double> xi) {
  const std::size_t n = xi.size() + 1;
  SimplexPoint point{std::vector<double>(n)};
  double remaining = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double exponent = 1.0 / static_cast<double>(n - 1 - k);
    const double lambda = (1.0 - std::pow(xi[k], exponent)) * remaining;
    point.weights[k] = lambda;
    remaining -= lambda;
  }
  point.weights[n - 1] = remaining < 0.0 ? 0.0 : remaining;
  return point;
}

SimplexPoint sample_simplex(int n, SeededStream& s) {
  require_at_least(n, 2, "simplex dimension");
  std::vector<double> xi(static_cast<std::size_t>(n - 1));
  for (double& x : xi) x = s.next_uniform();
  return simplex_from_uniforms(xi);
}

void sample_haar_unitary_into(int n, SeededStream& s, mat::ComplexMatrix& u) {
  require_at_least(n, 1, "unitary dimension");
  const auto dim = static_cast<std::size_t>(n);
  if (u.rows() != dim || u.cols() != dim) u = mat::ComplexMatrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = s.next_gaussian();
      const double im = s.next_gaussian();
      u(i, j) = {re, im};
    }

  // Modified Gram-Schmidt with one reorthogonalization pass.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        mat::complex r = 0.0;
        for (std::size_t i = 0; i < dim; ++i) r += std::conj(u(i, k)) * u(i, j);
        for (std::size_t i = 0; i < dim; ++i) u(i, j) -= r * u(i, k);
      }
    }
    double len = 0.0;
    for (std::size_t i = 0; i < dim; ++i) len += std::norm(u(i, j));
    len = std::sqrt(len);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) /= len;
  }
}

mat::ComplexMatrix sample_haar_unitary(int n, SeededStream& s) {
  mat::ComplexMatrix u;
  sample_haar_unitary_into(n, s, u);
  return u;
}

mat::ComplexMatrix rotate_spectrum(const mat::ComplexMatrix& u, std::span<const double> weights) {
  const std::size_t n = u.rows();
  if (weights.size() != n || !u.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "rotate_spectrum: spectrum length differs from unitary size");
  }
  mat::ComplexMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) diag += weights[k] * std::norm(u(i, k));
    rho(i, i) = diag;
    for (std::size_t j = i + 1; j < n; ++j) {
      mat::complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += weights[k] * u(i, k) * std::conj(u(j, k));
      rho(i, j) = sum;
      rho(j, i) = std::conj(sum);
    }
  }
  return rho;
}

SampledState sample_state_with_spectrum(Dims dims, SeededStream& s) {
  validate_dims(dims, static_cast<int>(mat::kMaxDimension));
  const int n = dims.total();
  SimplexPoint spectrum = sample_simplex(n, s);
  mat::ComplexMatrix u;
  sample_haar_unitary_into(n, s, u);
  DensityMatrix rho(dims, rotate_spectrum(u, spectrum.weights));
  return {std::move(rho), std::move(spectrum)};
}

DensityMatrix sample_density_matrix(Dims dims, SeededStream& s) {
  return sample_state_with_spectrum(dims, s).rho;
}

OctantPoint sample_octant(int k, SeededStream& s) {
  require_at_least(k, 1, "octant dimension");
  OctantPoint point{std::vector<double>(static_cast<std::size_t>(k))};
  double len = 0.0;
  while (len == 0.0) {
    len = 0.0;
    for (double& a : point.coeffs) {
      a = std::abs(s.next_gaussian());
      len += a * a;
    }
  }
  len = std::sqrt(len);
  for (double& a : point.coeffs) a /= len;
  return point;
}

mat::ComplexVector sample_schmidt_pure_state(int k, SeededStream& s) {
  require_at_least(k, 2, "Schmidt rank");
  const OctantPoint a = sample_octant(k, s);
  const mat::ComplexMatrix e = sample_haar_unitary(k, s);
  const mat::ComplexMatrix f = sample_haar_unitary(k, s);
  const auto dim = static_cast<std::size_t>(k);
  mat::ComplexVector psi(dim * dim, 0.0);
  for (std::size_t m = 0; m < dim; ++m)
    for (std::size_t mp = 0; mp < dim; ++mp) {
      mat::complex sum = 0.0;
      for (std::size_t i = 0; i < dim; ++i) sum += a.coeffs[i] * e(m, i) * f(mp, i);
      psi[m * dim + mp] = sum;
    }
  return psi;
}

}  // namespace sepvol::rng
