#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"

using namespace sepvol;
using mat::complex;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(rng::philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(rng::philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(rng::philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  rng::SeededStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c = differs_c || x != c.next_u64();
    differs_d = differs_d || x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(rng::derive_seed(1, 2) == rng::derive_seed(1, 2));
  CHECK(rng::derive_seed(1, 2) != rng::derive_seed(1, 3));
  const auto split = a.split(7);
  CHECK(split.seed() == 42);
  CHECK(split.stream_index() == 7);
}

TEST_CASE("uniform and gaussian moments") {
  rng::SeededStream s(2024, 0);
  const int n = 200000;
  double su = 0, su2 = 0, sg = 0, sg2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    su += u;
    su2 += u * u;
    const double g = s.next_gaussian();
    sg += g;
    sg2 += g * g;
  }
  CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(su2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
  CHECK(std::abs(sg / n) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(sg2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("simplex construction from uniforms") {
  const std::vector<double> x1{0.3};
  const auto p1 = rng::simplex_from_uniforms(x1).weights;
  CHECK(p1[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(p1[1] == doctest::Approx(0.3).epsilon(1e-15));
  const std::vector<double> x2{0.25, 0.5};
  const auto p2 = rng::simplex_from_uniforms(x2).weights;
  CHECK(p2[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p2[2] == doctest::Approx(0.25).epsilon(1e-15));

  rng::SeededStream s(1, 0);
  CHECK_THROWS_AS(rng::sample_simplex(1, s), Error);
}

TEST_CASE("simplex marginal follows the Beta(1, N-1) tail") {
  rng::SeededStream s(99, 0);
  const int n = 1000000;
  std::vector<double> first(n);
  std::array<double, 4> sums{};
  for (int i = 0; i < n; ++i) {
    const auto w = rng::sample_simplex(4, s).weights;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      REQUIRE(w[k] >= 0.0);
      sums[k] += w[k];
      total += w[k];
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-12);
    first[i] = w[0];
  }
  std::sort(first.begin(), first.end());
  // max_t |empirical P(L1 > t) - (1 - t)^3|
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double tail = std::pow(1.0 - first[i], 3);
    dev = std::max({dev, std::abs(double(n - i) / n - tail), std::abs(double(n - i - 1) / n - tail)});
  }
  CHECK(dev <= 0.005);

  // Each weight has mean 1/4 and variance 3/80.
  const double se = std::sqrt(3.0 / 80 / n);
  for (double sum : sums) CHECK(std::abs(sum / n - 0.25) <= 3 * se);
}

TEST_CASE("haar unitaries are unitary and have the Haar second moment") {
  rng::SeededStream s(5, 0);
  const auto u1 = rng::sample_haar_unitary(1, s);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-14);

  const auto u = rng::sample_haar_unitary(4, s);
  CHECK((u.adjoint() * u - mat::ComplexMatrix::identity(4)).frobenius_norm() <= 4e-10);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      complex ip = 0;
      for (int r = 0; r < 4; ++r) ip += std::conj(u(r, i)) * u(r, j);
      CHECK(std::abs(ip) < 1e-10);
    }

  // E|U11|^2 = 1/N with Var = (N-1)/(N^2 (N+1)); also under a fixed left rotation.
  const int n = 100000;
  const auto v = rng::sample_haar_unitary(4, s);
  double m = 0.0, mv = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto w = rng::sample_haar_unitary(4, s);
    m += std::norm(w(0, 0));
    mv += std::norm((v * w)(2, 1));
  }
  const double se = std::sqrt(3.0 / (16.0 * 5.0) / n);
  CHECK(std::abs(m / n - 0.25) <= 3 * se);
  CHECK(std::abs(mv / n - 0.25) <= 3 * se);
}

TEST_CASE("U(1) phase is uniform") {
  rng::SeededStream s(8, 0);
  const int n = 100000;
  std::vector<double> phase(n);
  for (int i = 0; i < n; ++i) {
    const complex z = rng::sample_haar_unitary(1, s)(0, 0);
    phase[i] = (std::arg(z) + std::numbers::pi) / (2 * std::numbers::pi);
  }
  std::sort(phase.begin(), phase.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) ks = std::max({ks, std::abs(phase[i] - double(i) / n), std::abs(phase[i] - double(i + 1) / n)});
  CHECK(ks < 1.63 / std::sqrt(double(n)));  // 1% critical value
}

TEST_CASE("octant samples are arc-uniform") {
  rng::SeededStream s(11, 0);
  CHECK(rng::sample_octant(1, s).coeffs == std::vector<double>{1.0});
  const int n = 1000000;
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) {
    const auto a = rng::sample_octant(2, s).coeffs;
    REQUIRE(a[0] >= 0.0);
    REQUIRE(a[1] >= 0.0);
    REQUIRE(std::abs(a[0] * a[0] + a[1] * a[1] - 1.0) <= 1e-12);
    theta[i] = std::atan2(a[1], a[0]) / (std::numbers::pi / 2);
  }
  std::sort(theta.begin(), theta.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) ks = std::max({ks, std::abs(theta[i] - double(i) / n), std::abs(theta[i] - double(i + 1) / n)});
  CHECK(ks <= 0.005);
}

TEST_CASE("schmidt pure states round-trip through the decomposition") {
  rng::SeededStream s(13, 0);
  for (int k = 2; k <= 4; ++k) {
    for (int trial = 0; trial < 200; ++trial) {
      rng::SeededStream probe = s;  // replay the octant draw that starts the sample
      auto a = rng::sample_octant(k, probe).coeffs;
      std::sort(a.rbegin(), a.rend());
      const auto psi = rng::sample_schmidt_pure_state(k, s);
      REQUIRE(psi.size() == static_cast<std::size_t>(k * k));
      CHECK(std::abs(mat::norm(psi) - 1.0) <= 1e-12);
      const auto spec = quantum::schmidt_decompose(psi, Dims{k, k});
      for (int i = 0; i < k; ++i) CHECK(std::abs(spec.coeffs[i] - a[i]) <= 1e-8);
      CHECK(spec.max_square() >= 1.0 / k - 1e-12);
    }
  }
}

TEST_CASE("density matrix sampling") {
  rng::SeededStream a(42, 0), b(42, 0);
  const auto ra = rng::sample_state_with_spectrum(Dims{2, 2}, a);
  const auto rb = rng::sample_density_matrix(Dims{2, 2}, b);
  CHECK(ra.rho.matrix() == rb.matrix());
  CHECK(mat::eigvalsh(ra.rho.matrix()) == mat::eigvalsh(rb.matrix()));
  CHECK(std::abs(ra.rho.matrix().trace() - complex(1.0)) <= 1e-12);
  CHECK(mat::is_hermitian(ra.rho.matrix()));
  auto w = ra.spectrum.weights;
  std::sort(w.begin(), w.end());
  const auto ev = mat::eigvalsh(ra.rho.matrix());
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(ev[i] - w[i]) <= 1e-12);
  CHECK_NOTHROW(ra.rho.validate(kStateTol));

  rng::SeededStream c(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = rng::sample_density_matrix(Dims{2, 3}, c);
    CHECK(std::abs(rho.matrix().trace() - complex(1.0)) <= 1e-12);
  }
}
