#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sepvol/density_matrix.hpp"

namespace sepvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Seed used by `bounds` for its Monte Carlo row when --seed is omitted.
inline constexpr std::uint64_t kBoundsDefaultSeed = 20010101;

/// "N1xN2"; throws InvalidArgument on anything else.
Dims parse_dims(const std::string& text);

/// Decimal or 0x-prefixed hexadecimal, full 64-bit range.
std::uint64_t parse_seed(const std::string& text);

/// Runs one subcommand. args excludes the program name. Results go to out
/// (or to --output), the run manifest and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepvol::cli
