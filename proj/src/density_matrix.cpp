#include "sepvol/density_matrix.hpp"

#include <cmath>

#include "sepvol/error.hpp"

namespace sepvol {

std::string Dims::to_string() const { return std::to_string(first) + "x" + std::to_string(second); }

void validate_dims(Dims dims, int max_total) {
  if (dims.first < 2 || dims.second < 2) {
    throw Error(ErrorCode::InvalidArgument, "dims " + dims.to_string() + ": each factor must be >= 2");
  }
  if (dims.total() > max_total) {
    throw Error(ErrorCode::InvalidArgument,
                "dims " + dims.to_string() + ": product exceeds " + std::to_string(max_total));
  }
}

DensityMatrix::DensityMatrix(Dims dims, mat::ComplexMatrix matrix) : dims_(dims), matrix_(std::move(matrix)) {
  validate_dims(dims_, static_cast<int>(mat::kMaxDimension));
  const auto n = static_cast<std::size_t>(dims_.total());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix for dims " + dims_.to_string() + " must be " +
                                                  std::to_string(n) + "x" + std::to_string(n));
  }
}

DensityMatrix DensityMatrix::validated(Dims dims, mat::ComplexMatrix matrix, double tol) {
  DensityMatrix rho(dims, std::move(matrix));
  rho.validate(tol);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const auto n = static_cast<std::size_t>(dims.total());
  return {dims, mat::ComplexMatrix::identity(n) * mat::complex(1.0 / static_cast<double>(n))};
}

DensityMatrix DensityMatrix::pure(Dims dims, std::span<const mat::complex> psi) {
  if (std::abs(mat::norm(psi) - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized, "pure state vector must have unit norm");
  }
  return {dims, mat::ComplexMatrix::outer(psi, psi)};
}

void DensityMatrix::validate(double tol) const {
  const double fro = matrix_.frobenius_norm();
  if (!mat::is_hermitian(matrix_, tol)) {
    throw Error(ErrorCode::InvalidState, "matrix is not Hermitian within tolerance");
  }
  const mat::complex tr = matrix_.trace();
  if (std::abs(tr.real() - 1.0) > tol || std::abs(tr.imag()) > tol) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr.real()) + " differs from 1");
  }
  const auto eig = mat::eigvalsh(matrix_);
  if (eig.front() < -tol * std::max(1.0, fro)) {
    throw Error(ErrorCode::InvalidState, "negative eigenvalue " + std::to_string(eig.front()));
  }
}

}  // namespace sepvol
