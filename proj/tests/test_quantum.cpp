#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sepvol/error.hpp"
#include "sepvol/quantum.hpp"
#include "sepvol/randgen.hpp"
#include "test_support.hpp"

using namespace sepvol;
using mat::complex;
using mat::ComplexMatrix;

namespace {

DensityMatrix singlet_projector() { return DensityMatrix::pure({2, 2}, quantum::singlet()); }

DensityMatrix wrap(const testing::EMatrix& e, Dims dims) { return DensityMatrix(dims, testing::from_eigen(e)); }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("partial transpose of fixed states") {
  const auto mixed = DensityMatrix::maximally_mixed({2, 2});
  CHECK(quantum::partial_transpose(mixed) == mixed.matrix());

  const auto spec = mat::eigvalsh(quantum::partial_transpose(singlet_projector()));
  const std::vector<double> expect{-0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 4; ++i) CHECK(spec[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  CHECK_THROWS_AS(quantum::partial_transpose(ComplexMatrix::identity(5), Dims{2, 2}), Error);
}

TEST_CASE("partial transpose of product states") {
  std::mt19937_64 gen(21);
  for (auto [n1, n2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    const testing::EMatrix s1 = testing::eigen_random_state(n1, gen);
    const testing::EMatrix s2 = testing::eigen_random_state(n2, gen);
    const testing::EMatrix prod = Eigen::kroneckerProduct(s1, s2);
    const testing::EMatrix expect = Eigen::kroneckerProduct(s1, s2.transpose());
    const auto pt = quantum::partial_transpose(testing::from_eigen(prod), Dims{n1, n2});
    CHECK((testing::to_eigen(pt) - expect).norm() < 1e-14);

    const Eigen::VectorXd e1 = testing::eigen_eigvals(s1), e2 = testing::eigen_eigvals(s2);
    std::vector<double> products;
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) products.push_back(e1(i) * e2(j));
    const auto spec = mat::eigvalsh(pt);
    const auto want = sorted(products);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(spec[i] - want[i]) < 1e-12);
  }
}

TEST_CASE("partial transpose matches the index rule on random states") {
  std::mt19937_64 gen(22);
  for (auto [n1, n2] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
    const auto e = testing::eigen_random_state(n1 * n2, gen);
    const auto pt = quantum::partial_transpose(testing::from_eigen(e), Dims{n1, n2});
    CHECK((testing::to_eigen(pt) - testing::eigen_partial_transpose(e, n1, n2)).norm() == 0.0);
  }
}

TEST_CASE("ppt_check examples") {
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const auto v = quantum::ppt_check(DensityMatrix::maximally_mixed(d));
    CHECK(v.is_ppt);
    CHECK(v.min_pt_eigenvalue == doctest::Approx(1.0 / d.total()).epsilon(1e-12));
  }
  const auto s = quantum::ppt_check(singlet_projector());
  CHECK_FALSE(s.is_ppt);
  CHECK(s.min_pt_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));

  const auto w = quantum::ppt_check(quantum::werner_state(0.5));
  CHECK_FALSE(w.is_ppt);
  CHECK(w.min_pt_eigenvalue == doctest::Approx(-0.125).epsilon(1e-12));
  double sum = 0.0;
  for (double x : w.pt_spectrum) sum += x;
  CHECK(std::abs(sum - 1.0) < 1e-10);

  CHECK(quantum::ppt_implies_separable({2, 2}));
  CHECK(quantum::ppt_implies_separable({2, 3}));
  CHECK(quantum::ppt_implies_separable({3, 2}));
  CHECK_FALSE(quantum::ppt_implies_separable({2, 4}));
  CHECK_FALSE(quantum::ppt_implies_separable({3, 3}));
}

TEST_CASE("verdict tolerance boundary") {
  CHECK(quantum::verdict_from_spectrum({-1e-10, 0.5, 0.5}).is_ppt);
  CHECK_FALSE(quantum::verdict_from_spectrum({-2e-10, 0.5, 0.5}).is_ppt);
  CHECK(quantum::verdict_from_spectrum({-2e-10, 0.5, 0.5}, 1e-9).is_ppt);
}

TEST_CASE("participation ratio and renyi entropy") {
  CHECK(quantum::participation_ratio(singlet_projector()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quantum::participation_ratio(DensityMatrix::maximally_mixed({2, 3})) == doctest::Approx(6.0).epsilon(1e-12));
  const std::vector<double> half{0.5, 0.5, 0.0, 0.0};
  CHECK(quantum::participation_ratio(DensityMatrix({2, 2}, ComplexMatrix::diagonal(half))) == doctest::Approx(2.0));

  for (double q : {0.5, 1.0, 2.0, 3.0, 10.0}) {
    CHECK(quantum::renyi_entropy(DensityMatrix::maximally_mixed({2, 2}), q) == doctest::Approx(std::log(4.0)));
    CHECK(std::abs(quantum::renyi_entropy(singlet_projector(), q)) < 1e-10);
  }
  CHECK_THROWS_AS(quantum::renyi_entropy(singlet_projector(), 0.0), Error);
  CHECK_THROWS_AS(quantum::renyi_entropy(singlet_projector(), -1.0), Error);

  rng::SeededStream s(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto st = rng::sample_state_with_spectrum({2, 3}, s);
    const double r = quantum::participation_ratio(st.rho);
    CHECK(r >= 1.0 - 1e-12);
    CHECK(r <= 6.0 + 1e-12);
    CHECK(std::abs(quantum::renyi_entropy(st.rho, 2.0) - std::log(r)) < 1e-10);
    CHECK(std::abs(quantum::participation_ratio(st.spectrum.weights) - r) < 1e-10);
    // q -> 1 approaches the von Neumann value.
    const double vn = quantum::renyi_entropy(st.rho, 1.0);
    double direct = 0.0;
    for (double l : st.spectrum.weights)
      if (l > 0) direct -= l * std::log(l);
    CHECK(std::abs(vn - direct) < 1e-9);
    CHECK(std::abs(quantum::renyi_entropy(st.rho, 1.0 + 1e-7) - vn) < 1e-5);
  }
}

TEST_CASE("t statistic") {
  CHECK(std::abs(quantum::t_statistic(singlet_projector()) - 1.0) <= 1e-10);
  CHECK(quantum::t_statistic(DensityMatrix::maximally_mixed({2, 2})) == 0.0);
  CHECK(std::abs(quantum::t_statistic(quantum::werner_state(0.5)) - 0.25) <= 1e-10);
  for (int i = 0; i < 100; ++i) {
    const double q = i / 99.0;
    const double expect = std::max(0.0, (3 * q - 1) / 2);
    CHECK(std::abs(quantum::t_statistic(quantum::werner_state(q)) - expect) <= 1e-10);
  }
  rng::SeededStream s(32, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = rng::sample_density_matrix({2, 2}, s);
    const auto v = quantum::ppt_check(rho);
    const double t = quantum::t_statistic(v);
    CHECK(t >= 0.0);
    if (v.is_ppt) CHECK(t == 0.0);
  }
}

TEST_CASE("werner parametrization maps t values") {
  for (double x : {0.7, 0.8, 0.9, 1.0}) {
    const double q = quantum::werner_weight_from_x(x);
    const double t_x = (3 * x - 2) / (4 - 3 * x);
    CHECK(std::abs(quantum::t_statistic(quantum::werner_state(q)) - t_x) < 1e-10);
  }
  CHECK(quantum::werner_weight_from_x(2.0 / 3.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("schmidt decomposition") {
  const mat::ComplexVector prod{1.0, 0.0, 0.0, 0.0};
  const auto p = quantum::schmidt_decompose(prod, {2, 2});
  CHECK(p.coeffs[0] == doctest::Approx(1.0));
  CHECK(std::abs(p.coeffs[1]) < 1e-14);
  const auto s = quantum::schmidt_decompose(quantum::singlet(), {2, 2});
  CHECK(s.coeffs[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s.coeffs[1] == doctest::Approx(1 / std::sqrt(2.0)));
  const mat::ComplexVector bad{1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(quantum::schmidt_decompose(bad, {2, 2}), Error);

  // 2x3 vectors get K = 2 coefficients.
  std::mt19937_64 gen(41);
  const auto v = testing::random_matrix(6, 1, gen);
  mat::ComplexVector psi(v.entries().begin(), v.entries().end());
  const double n = mat::norm(psi);
  for (auto& x : psi) x /= n;
  const auto a = quantum::schmidt_decompose(psi, {2, 3});
  CHECK(a.coeffs.size() == 2);
  CHECK(std::abs(a.coeffs[0] * a.coeffs[0] + a.coeffs[1] * a.coeffs[1] - 1.0) < 1e-10);
}

TEST_CASE("pure-state PT spectrum is {a_i^2} and {+-a_i a_j}") {
  rng::SeededStream s(43, 0);
  for (int k = 2; k <= 3; ++k) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto psi = rng::sample_schmidt_pure_state(k, s);
      const Dims d{k, k};
      const auto a = quantum::schmidt_decompose(psi, d).coeffs;
      std::vector<double> expect;
      for (int i = 0; i < k; ++i) expect.push_back(a[i] * a[i]);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
          expect.push_back(a[i] * a[j]);
          expect.push_back(-a[i] * a[j]);
        }
      std::sort(expect.begin(), expect.end());
      const auto spec = quantum::ppt_check(DensityMatrix::pure(d, psi)).pt_spectrum;
      for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(spec[i] - expect[i]) <= 1e-8);
    }
  }
}

TEST_CASE("structural properties against an independent oracle") {
  std::mt19937_64 gen(44);
  for (auto [n1, n2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    const int n = n1 * n2;
    for (int trial = 0; trial < 100; ++trial) {
      const auto e = testing::eigen_random_state(n, gen);
      const auto rho = wrap(e, {n1, n2});
      const auto pt = quantum::partial_transpose(rho);
      CHECK(quantum::partial_transpose(pt, {n1, n2}) == rho.matrix());

      const double purity = (e * e).trace().real();
      const double pt_purity = mat::frobenius_inner(pt, pt).real();
      CHECK(std::abs(purity - pt_purity) <= 1e-10);

      const auto v = quantum::ppt_check(rho);
      const Eigen::VectorXd ref = testing::eigen_eigvals(testing::eigen_partial_transpose(e, n1, n2));
      for (int i = 0; i < n; ++i) CHECK(std::abs(v.pt_spectrum[static_cast<std::size_t>(i)] - ref(i)) <= 1e-10);
      CHECK(v.pt_spectrum.front() >= -0.5 - 1e-8);
      CHECK(v.pt_spectrum.back() <= 1.0 + 1e-8);

      const testing::EMatrix local =
          Eigen::kroneckerProduct(testing::eigen_haar(n1, gen), testing::eigen_haar(n2, gen)).eval();
      const auto rotated = wrap(local * e * local.adjoint(), {n1, n2});
      const auto v2 = quantum::ppt_check(rotated);
      for (int i = 0; i < n; ++i)
        CHECK(std::abs(v2.pt_spectrum[static_cast<std::size_t>(i)] - v.pt_spectrum[static_cast<std::size_t>(i)]) <= 1e-8);
    }
  }
}

TEST_CASE("lemma 4 witness") {
  const auto w = quantum::witness_lemma4(singlet_projector(), quantum::singlet());
  CHECK(w.fired);
  CHECK(w.value == doctest::Approx(1.0));
  CHECK(w.threshold == doctest::Approx(2.0 / 3.0));

  const mat::ComplexVector prod{1.0, 0.0, 0.0, 0.0};
  const auto m = quantum::witness_lemma4(DensityMatrix::maximally_mixed({2, 2}), prod);
  CHECK_FALSE(m.fired);
  CHECK(m.value == doctest::Approx(0.25));

  // rho(q) is diagonal in the Bell basis: singlet eigenvalue q + (1-q)/4.
  const double q = 0.8;
  const auto lw = quantum::witness_lemma4(quantum::werner_state(q), quantum::singlet());
  CHECK(lw.value == doctest::Approx(q + (1 - q) / 4).epsilon(1e-10));
  CHECK(lw.fired == (q + (1 - q) / 4 > 2.0 / 3.0));

  CHECK_THROWS_AS(quantum::witness_lemma4(singlet_projector(), prod), Error);
}

TEST_CASE("lemma 6 witness") {
  const auto w = quantum::witness_lemma6(singlet_projector(), quantum::singlet());
  CHECK(w.fired);
  CHECK(w.value == doctest::Approx(1.0));
  CHECK(w.threshold == doctest::Approx(0.5));

  rng::SeededStream s(45, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = rng::sample_schmidt_pure_state(2, s);
    CHECK_FALSE(quantum::witness_lemma6(DensityMatrix::maximally_mixed({2, 2}), psi).fired);
  }

  int tested = 0;
  while (tested < 20) {
    const auto rho = rng::sample_density_matrix({2, 2}, s);
    if (!quantum::ppt_check(rho).is_ppt) continue;
    ++tested;
    for (int k = 0; k < 100; ++k) {
      const auto psi = rng::sample_schmidt_pure_state(2, s);
      CHECK_FALSE(quantum::witness_lemma6(rho, psi).fired);
    }
  }
}

TEST_CASE("eigenvector scan") {
  CHECK(quantum::witness_eigenvector_scan(singlet_projector()));
  CHECK_FALSE(quantum::witness_eigenvector_scan(DensityMatrix::maximally_mixed({2, 2})));
  rng::SeededStream s(46, 0);
  for (Dims d : {Dims{2, 2}, Dims{2, 3}}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const auto rho = rng::sample_density_matrix(d, s);
      if (quantum::witness_eigenvector_scan(rho)) CHECK_FALSE(quantum::ppt_check(rho).is_ppt);
    }
  }
}

TEST_CASE("identity mixture") {
  rng::SeededStream s(47, 0);
  const auto sigma = rng::sample_density_matrix({2, 2}, s);
  CHECK(quantum::mix_with_identity(sigma, 0.0).matrix() == DensityMatrix::maximally_mixed({2, 2}).matrix());
  CHECK(quantum::mix_with_identity(sigma, 1.0).matrix() == sigma.matrix());
  CHECK_THROWS_AS(quantum::mix_with_identity(sigma, 1.5), Error);
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{2, 4}, Dims{3, 3}}) {
    const double p = 2.0 / (2.0 + d.total());
    for (int trial = 0; trial < 200; ++trial) {
      CHECK(quantum::ppt_check(quantum::mix_with_identity(rng::sample_density_matrix(d, s), p)).is_ppt);
    }
    // Just beyond the radius the singlet-like extreme state breaks positivity.
    if (d == Dims{2, 2}) CHECK_FALSE(quantum::ppt_check(quantum::mix_with_identity(singlet_projector(), p + 1e-6)).is_ppt);
  }
}
