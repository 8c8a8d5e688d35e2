#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace ctensor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

/// Parses the arguments (argv[0] excluded), runs the subcommand and writes the
/// document to `out` (or the --output file). Diagnostics go to `err`.
/// Returns 0 on success and 2 on malformed input; verdicts never change it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the bundled example fixtures: CTENSOR_DATA_DIR from the
/// environment when set, otherwise the source tree's data/ directory.
std::filesystem::path default_data_dir();

}  // namespace ctensor::cli
