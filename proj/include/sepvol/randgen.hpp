#pragma once

// Deterministic sampling of every measure the estimator needs: the uniform
// simplex, Haar unitaries, random density matrices U diag(Lambda) U^dagger,
// arc-uniform octant points and Schmidt-form pure states.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sepvol/density_matrix.hpp"
#include "sepvol/matcore.hpp"

namespace sepvol::rng {

/// Philox4x32-10 block function (counter-based; Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// splitmix64 finalizer; used to derive independent seeds for sub-campaigns.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// A Philox stream keyed by `seed` and addressed by `stream_index`. Two
/// streams with different indices use disjoint counter ranges, so they are
/// independent in the sense documented for Philox. Single owner: never share
/// one stream between threads; split first.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  /// Fresh stream with the same seed and a different index.
  SeededStream split(std::uint64_t stream_index) const { return {seed_, stream_index}; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_uniform();
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double next_gaussian();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

struct SimplexPoint {
  std::vector<double> weights;  // nonnegative, sum 1
};

struct OctantPoint {
  std::vector<double> coeffs;  // nonnegative, sum of squares 1
};

/// Sequential construction on the simplex from N-1 uniforms xi in (0,1):
/// Lambda_k = (1 - xi_k^{1/(N-k)}) * (1 - sum_{i<k} Lambda_i), last weight is
/// the remainder.
SimplexPoint simplex_from_uniforms(std::span<const double> xi);

SimplexPoint sample_simplex(int n, SeededStream& s);

/// Haar unitary: complex Gaussian matrix, modified Gram-Schmidt on the
/// columns. Gram-Schmidt leaves R with a positive real diagonal, so the
/// phase correction conj(r_jj)/|r_jj| is the identity here.
mat::ComplexMatrix sample_haar_unitary(int n, SeededStream& s);

/// Writes a Haar unitary into `u` (resized as needed); allocation-free on reuse.
void sample_haar_unitary_into(int n, SeededStream& s, mat::ComplexMatrix& u);

/// rho = U diag(Lambda) U^dagger with Lambda ~ simplex, U ~ Haar. Draw order:
/// simplex first, then the unitary.
DensityMatrix sample_density_matrix(Dims dims, SeededStream& s);

/// Same draw as sample_density_matrix, also returning the spectrum Lambda
/// (the eigenvalues of the returned state).
struct SampledState {
  DensityMatrix rho;
  SimplexPoint spectrum;
};
SampledState sample_state_with_spectrum(Dims dims, SeededStream& s);

/// U diag(weights) U^dagger
mat::ComplexMatrix rotate_spectrum(const mat::ComplexMatrix& u, std::span<const double> weights);

/// Uniform surface measure on {a >= 0, |a| = 1} in R^K.
OctantPoint sample_octant(int k, SeededStream& s);

/// sum_i a_i e_i (x) f_i with e, f columns of independent Haar unitaries and
/// a ~ sample_octant(K). Returns a vector in C^{K*K}.
mat::ComplexVector sample_schmidt_pure_state(int k, SeededStream& s);

}  // namespace sepvol::rng
