#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sclim::cli {

/// Master seed used when neither --seed nor SCLIM_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sclim::cli
