#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cli/settings.hpp"

namespace arbsim::cli {

/// Thrown by parse_args for --help; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  Command command = Command::walk;
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path output_dir = ".";
  std::vector<std::pair<std::string, std::string>> overrides;  // flags, in application order
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
  bool plot = false;
  bool jsonl = false;
  Settings settings{Command::walk};
};

/// Resolution order, lowest first: built-in defaults, ARBSIM_SEED (seed
/// only), config file, --set, named flags. `env_seed` stands in for the
/// environment variable.
CliConfig parse_args(const std::vector<std::string>& args, const std::optional<std::string>& env_seed);

/// Same, reading ARBSIM_SEED from the environment. argv[0] is skipped.
CliConfig parse_args(int argc, const char* const* argv);

/// Header line written at the top of every output file.
std::string metadata_header(const CliConfig& config);

/// Runs the command, writing artifacts under output_dir and a short
/// summary to `out`.
void dispatch(const CliConfig& config, std::ostream& out);

/// parse_args + dispatch with exit codes: 0 ok, 1 usage, 2 runtime.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arbsim::cli
