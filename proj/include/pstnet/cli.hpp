#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "PSTNET_OUTPUT_DIR";

/// Runs one subcommand. `args` excludes the program name, e.g.
/// {"spectrum", "--n", "12", "--profile", "uniform:C=1,R=5"}.
/// Summaries go to `out`, diagnostics to `err`; data files are written into
/// the output directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines ('#' starts a comment) and returns them as
/// `--key value` flag pairs.
std::vector<std::string> read_config_flags(const std::string& path);

}  // namespace pstnet::cli
