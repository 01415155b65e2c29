#pragma once

// State files:
//   density matrix: {"dims": [N1, N2], "matrix": [[re, im], ...]}   N^2 entries
//   pure state:     {"dims": [N1, N2], "vector": [[re, im], ...]}   N entries
// Entries are row-major under the first-factor-major index convention.

#include <filesystem>
#include <string>

#include "sepvol/density_matrix.hpp"

namespace sepvol::io {

/// Parses and validates (Hermitian, unit trace, positive within kStateTol).
DensityMatrix parse_density_matrix(const std::string& text);
DensityMatrix read_density_matrix(const std::filesystem::path& path);

struct PureState {
  Dims dims;
  mat::ComplexVector vector;
};

/// Throws NotNormalized when |psi| differs from 1 by more than 1e-8.
PureState parse_pure_state(const std::string& text);
PureState read_pure_state(const std::filesystem::path& path);

std::string format_density_matrix(const DensityMatrix& rho);
std::string format_pure_state(const PureState& state);

}  // namespace sepvol::io
