#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbsim::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { walk, gbm, hit_sweep, arb_step, fee_sweep, policy_sim };

Command parse_command(const std::string& name);
std::string command_name(Command command);

/// Fully qualified key -> value, e.g. "gbm.sigma" -> "0.001". Keys are the
/// fixed set registered for a command; anything else is rejected.
class Settings {
 public:
  explicit Settings(Command command);

  /// Sets a key. A bare leaf ("sigma") resolves to the command's unique
  /// key with that leaf ("walk.sigma"). Throws UsageError for unknown or
  /// ambiguous keys.
  void set(const std::string& key, const std::string& value);

  /// Resolves a bare leaf or a qualified key to the registered key.
  std::string resolve(const std::string& key) const;
  bool has_leaf(const std::string& leaf) const;

  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }
  Command command() const { return command_; }

 private:
  Command command_;
  std::map<std::string, std::string> values_;
};

/// Reads `key = value` lines ('#' comments, blank lines ignored). A file
/// whose first line is an arbsim output header ("# arbsim <cmd> k=v ...")
/// is read from that header instead, so outputs can be replayed.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path,
                                                                  Command command);

}  // namespace arbsim::cli
