#pragma once

// Dense complex matrices sized for small quantum systems (dimension <= 32,
// hard limit 64). Everything here is a pure function of its inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sepvol::mat {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;

inline constexpr std::size_t kMaxDimension = 64;
inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues above kRankTol * lambda_max count as part of the range.
inline constexpr double kRankTol = 1e-10;
/// Allowed out-of-range residual for range_solve, relative to |v|.
inline constexpr double kRangeResidualTol = 1e-8;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  /// |a><b|
  static ComplexMatrix outer(std::span<const complex> a, std::span<const complex> b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<complex> entries() noexcept { return entries_; }
  std::span<const complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, complex scale);
ComplexMatrix operator*(complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// <a|b>, antilinear in the first argument.
complex dot(std::span<const complex> a, std::span<const complex> b);
double norm(std::span<const complex> v);

/// Tr(B^dagger A).
complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// |A - A^dagger|_F <= tol * |A|_F
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

struct HermitianEigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

/// Cyclic Jacobi. Throws NonHermitianInput or NoConvergence.
HermitianEigenDecomposition eigh(const ComplexMatrix& a);

/// Eigenvalues only (ascending); same iteration as eigh without accumulating
/// the rotations. The hot path of every Monte Carlo campaign.
std::vector<double> eigvalsh(const ComplexMatrix& a);

/// Eigenvalues only, no Hermiticity pre-check. `a` is overwritten.
/// The caller guarantees `a` is Hermitian by construction.
std::vector<double> eigvalsh_unchecked(ComplexMatrix& a);

/// C = left * diag(singular_values) * right^dagger
struct SingularValueDecomposition {
  ComplexMatrix left;
  std::vector<double> singular_values;  // nonincreasing
  ComplexMatrix right;
};

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
SingularValueDecomposition svd(const ComplexMatrix& c);

/// Singular values only, nonincreasing.
std::vector<double> singular_values(const ComplexMatrix& c);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix applied to v,
/// inverting eigenvalues above kRankTol * lambda_max. Throws NotInRange when
/// v has a component outside the range larger than kRangeResidualTol * |v|.
ComplexVector range_solve(const ComplexMatrix& a, std::span<const complex> v);

}  // namespace sepvol::mat
