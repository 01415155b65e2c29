#pragma once

#include <string>

#include "sepvol/matcore.hpp"

namespace sepvol {

/// Bipartite split N1 x N2. Composite index convention: row = m * N2 + m'
/// (first factor major).
struct Dims {
  int first = 2;
  int second = 2;

  int total() const noexcept { return first * second; }
  Dims swapped() const noexcept { return {second, first}; }
  std::string to_string() const;

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Throws InvalidArgument unless both factors are >= 2 and the product is
/// at most `max_total`.
void validate_dims(Dims dims, int max_total = 32);

/// Positivity tolerance on eigenvalues: lambda >= -kPositivityTol counts as
/// nonnegative.
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kStateTol = 1e-10;

/// A density matrix on C^N1 (x) C^N2.
///
/// Construction only checks the shape. Sampled states satisfy the state
/// invariants by construction; anything read from outside goes through
/// validated(), which also checks Hermiticity, unit trace and positivity.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, mat::ComplexMatrix matrix);

  static DensityMatrix validated(Dims dims, mat::ComplexMatrix matrix, double tol = kStateTol);
  static DensityMatrix maximally_mixed(Dims dims);
  /// |psi><psi| for a unit vector psi.
  static DensityMatrix pure(Dims dims, std::span<const mat::complex> psi);

  Dims dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }
  const mat::ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// Throws InvalidState describing the first violated invariant.
  void validate(double tol = kStateTol) const;

 private:
  Dims dims_;
  mat::ComplexMatrix matrix_;
};

}  // namespace sepvol
