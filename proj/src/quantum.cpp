#include "sepvol/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "sepvol/error.hpp"

namespace sepvol::quantum {

mat::ComplexMatrix partial_transpose(const mat::ComplexMatrix& rho, Dims dims) {
  const auto n1 = static_cast<std::size_t>(dims.first);
  const auto n2 = static_cast<std::size_t>(dims.second);
  if (rho.rows() != n1 * n2 || rho.cols() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "partial_transpose: matrix size does not match dims " +
                                                  dims.to_string());
  }
  mat::ComplexMatrix out(n1 * n2, n1 * n2);
  for (std::size_t m = 0; m < n1; ++m)
    for (std::size_t mp = 0; mp < n2; ++mp)
      for (std::size_t n = 0; n < n1; ++n)
        for (std::size_t np = 0; np < n2; ++np) out(m * n2 + mp, n * n2 + np) = rho(m * n2 + np, n * n2 + mp);
  return out;
}

mat::ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix(), rho.dims());
}

PptVerdict verdict_from_spectrum(std::vector<double> pt_spectrum, double tol) {
  std::sort(pt_spectrum.begin(), pt_spectrum.end());
  PptVerdict v;
  v.min_pt_eigenvalue = pt_spectrum.front();
  v.is_ppt = v.min_pt_eigenvalue >= -tol;
  v.pt_spectrum = std::move(pt_spectrum);
  return v;
}

PptVerdict ppt_check(const DensityMatrix& rho, double tol) {
  // The partial transpose of a Hermitian matrix is Hermitian by construction.
  mat::ComplexMatrix pt = partial_transpose(rho);
  return verdict_from_spectrum(mat::eigvalsh_unchecked(pt), tol);
}

bool ppt_implies_separable(Dims dims) noexcept {
  const int lo = std::min(dims.first, dims.second);
  const int hi = std::max(dims.first, dims.second);
  return lo == 2 && (hi == 2 || hi == 3);
}

double participation_ratio(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double purity = 0.0;
  for (const mat::complex& z : rho.matrix().entries()) purity += std::norm(z);
  return 1.0 / purity;
}

double participation_ratio(std::span<const double> spectrum) {
  double purity = 0.0;
  for (double x : spectrum) purity += x * x;
  return 1.0 / purity;
}

double renyi_entropy(std::span<const double> spectrum, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "Renyi order q must be > 0");
  if (q == 1.0) {
    double h = 0.0;
    for (double x : spectrum)
      if (x > kPositivityTol) h -= x * std::log(x);
    return h;
  }
  double s = 0.0;
  for (double x : spectrum)
    if (x > kPositivityTol) s += std::pow(x, q);
  return std::log(s) / (1.0 - q);
}

double renyi_entropy(const DensityMatrix& rho, double q) {
  return renyi_entropy(mat::eigvalsh(rho.matrix()), q);
}

double t_statistic(const PptVerdict& verdict) {
  if (verdict.is_ppt) return 0.0;
  double sum = 0.0;
  for (double x : verdict.pt_spectrum) {
    if (x < 0.0 && x >= -kPositivityTol) x = 0.0;
    sum += std::abs(x);
  }
  return sum - 1.0;
}

double t_statistic(const DensityMatrix& rho) { return t_statistic(ppt_check(rho)); }

SchmidtSpectrum schmidt_decompose(std::span<const mat::complex> psi, Dims dims) {
  const auto n1 = static_cast<std::size_t>(dims.first);
  const auto n2 = static_cast<std::size_t>(dims.second);
  if (psi.size() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "schmidt_decompose: vector length does not match dims");
  }
  if (std::abs(mat::norm(psi) - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized, "schmidt_decompose: state must have unit norm");
  }
  // Coefficient matrix C(m, m') = psi[m * N2 + m'], zero-padded to square.
  const std::size_t side = std::max(n1, n2);
  mat::ComplexMatrix c(side, side);
  for (std::size_t m = 0; m < n1; ++m)
    for (std::size_t mp = 0; mp < n2; ++mp) c(m, mp) = psi[m * n2 + mp];
  std::vector<double> s = mat::singular_values(c);
  s.resize(std::min(n1, n2));
  return {std::move(s)};
}

namespace {

void require_unit(std::span<const mat::complex> psi, std::size_t n) {
  if (psi.size() != n) throw Error(ErrorCode::DimensionMismatch, "witness: vector length does not match state");
  if (std::abs(mat::norm(psi) - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized, "witness: state vector must have unit norm");
  }
}

}  // namespace

WitnessResult witness_lemma4(const DensityMatrix& rho, std::span<const mat::complex> psi) {
  require_unit(psi, rho.dimension());
  const mat::ComplexVector w = mat::range_solve(rho.matrix(), psi);
  const double lambda = 1.0 / mat::dot(psi, w).real();
  const SchmidtSpectrum a = schmidt_decompose(psi, rho.dims());
  const double threshold = 1.0 / (1.0 + a.max_cross());
  return {lambda > threshold + kWitnessMargin, lambda, threshold};
}

WitnessResult witness_lemma6(const DensityMatrix& rho, std::span<const mat::complex> psi) {
  require_unit(psi, rho.dimension());
  const mat::ComplexVector rpsi = rho.matrix() * psi;
  const double lambda = mat::dot(psi, rpsi).real();
  const SchmidtSpectrum a = schmidt_decompose(psi, rho.dims());
  const double threshold = a.max_square();
  return {lambda > threshold + kWitnessMargin, lambda, threshold};
}

bool witness_eigenvector_scan(const DensityMatrix& rho) {
  const mat::HermitianEigenDecomposition eig = mat::eigh(rho.matrix());
  const std::size_t n = rho.dimension();
  mat::ComplexVector v(n);
  // Scan from the largest eigenvalue down; only eigenvalues above 1/K can
  // satisfy either condition.
  const double floor = 1.0 / std::min(rho.dims().first, rho.dims().second);
  for (std::size_t k = n; k-- > 0;) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= floor) break;
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.eigenvectors(i, k);
    const SchmidtSpectrum a = schmidt_decompose(v, rho.dims());
    if (lambda > 1.0 / (1.0 + a.max_cross()) + kWitnessMargin) return true;
    if (lambda > a.max_square() + kWitnessMargin) return true;
  }
  return false;
}

DensityMatrix mix_with_identity(const DensityMatrix& sigma, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mixture weight must lie in [0, 1]");
  const std::size_t n = sigma.dimension();
  mat::ComplexMatrix m = sigma.matrix() * mat::complex(p);
  const double diag = (1.0 - p) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += diag;
  return {sigma.dims(), std::move(m)};
}

mat::ComplexVector singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return {0.0, h, -h, 0.0};
}

DensityMatrix werner_state(double q) {
  const DensityMatrix proj = DensityMatrix::pure({2, 2}, singlet());
  return mix_with_identity(proj, q);
}

double werner_weight_from_x(double x) { return x / (4.0 - 3.0 * x); }

}  // namespace sepvol::quantum
