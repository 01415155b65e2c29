#pragma once

#include <span>
#include <vector>

#include "sepvol/density_matrix.hpp"
#include "sepvol/matcore.hpp"

namespace sepvol::quantum {

/// Transposes the second factor: result(m m', n n') = rho(m n', n m').
mat::ComplexMatrix partial_transpose(const mat::ComplexMatrix& rho, Dims dims);
mat::ComplexMatrix partial_transpose(const DensityMatrix& rho);

struct PptVerdict {
  bool is_ppt = false;
  double min_pt_eigenvalue = 0.0;
  std::vector<double> pt_spectrum;  // ascending
};

PptVerdict ppt_check(const DensityMatrix& rho, double tol = kPositivityTol);

/// Verdict from a partial-transpose spectrum that was computed elsewhere.
PptVerdict verdict_from_spectrum(std::vector<double> pt_spectrum, double tol = kPositivityTol);

/// PPT is equivalent to separability for 2x2 and 2x3 (either order).
bool ppt_implies_separable(Dims dims) noexcept;

/// R = 1 / Tr(rho^2), in [1, N].
double participation_ratio(const DensityMatrix& rho);
double participation_ratio(std::span<const double> spectrum);

/// H_q = ln(sum lambda^q) / (1 - q); von Neumann entropy at q = 1.
/// Eigenvalues at or below kPositivityTol are dropped.
double renyi_entropy(const DensityMatrix& rho, double q);
double renyi_entropy(std::span<const double> spectrum, double q);

/// t = sum |lambda'| - 1 over the partial-transpose spectrum, exactly 0 for
/// PPT states.
double t_statistic(const DensityMatrix& rho);
double t_statistic(const PptVerdict& verdict);

struct SchmidtSpectrum {
  std::vector<double> coeffs;  // nonincreasing, sum of squares 1

  double max_square() const { return coeffs.front() * coeffs.front(); }
  /// max_{i != j} a_i a_j
  double max_cross() const { return coeffs.size() < 2 ? 0.0 : coeffs[0] * coeffs[1]; }
};

/// Throws NotNormalized unless |psi| = 1 within 1e-8.
SchmidtSpectrum schmidt_decompose(std::span<const mat::complex> psi, Dims dims);

/// Outcome of one inseparability witness: fired <=> value > threshold.
/// fired == true proves the state inseparable.
struct WitnessResult {
  bool fired = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Slack added to every witness threshold so that a fired witness is never
/// a rounding artifact at the boundary.
inline constexpr double kWitnessMargin = 1e-9;

/// Lambda = 1 / <psi|rho^+|psi> against 1 / (1 + max_{i!=j} a_i a_j).
/// Throws NotInRange when psi is not in the range of rho.
WitnessResult witness_lemma4(const DensityMatrix& rho, std::span<const mat::complex> psi);

/// <psi|rho|psi> against max_i a_i^2. psi need not lie in the range.
WitnessResult witness_lemma6(const DensityMatrix& rho, std::span<const mat::complex> psi);

/// Both conditions applied to every eigenpair of rho (eigenvalue in place of
/// the expectation value); true if any fires.
bool witness_eigenvector_scan(const DensityMatrix& rho);

/// (1 - p) I/N + p sigma
DensityMatrix mix_with_identity(const DensityMatrix& sigma, double p);

/// Singlet (|01> - |10>)/sqrt(2) on 2x2.
mat::ComplexVector singlet();

/// q |psi-><psi-| + (1 - q) I/4; PT spectrum {(1+q)/4 x3, (1-3q)/4}.
DensityMatrix werner_state(double q);

/// Singlet weight q whose t value matches t = (3x - 2)/(4 - 3x) in the
/// x-parametrized Werner family: q = x / (4 - 3x).
double werner_weight_from_x(double x);

}  // namespace sepvol::quantum
