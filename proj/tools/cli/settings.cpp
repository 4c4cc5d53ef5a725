#include "cli/settings.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace arbsim::cli {

namespace {

using Defaults = std::vector<std::pair<const char*, const char*>>;

const Defaults kWalk = {
    {"walk.p0", "1"}, {"walk.sigma", "0.02"}, {"walk.p_up", "0.5"}, {"walk.steps", "1000"}};

const Defaults kGbm = {{"gbm.p0", "1"},
                       {"gbm.mu", "0"},
                       {"gbm.sigma", "0.001"},
                       {"gbm.steps", "1000"},
                       {"gbm.increments", "binary"}};

const Defaults kHit = {{"walk.p0", "1"},
                       {"walk.sigma", "0.02"},
                       {"walk.p_up", "0.5"},
                       {"hit.mode", "symmetric"},
                       {"hit.grid", "0.1,0.14,0.2,0.3,0.4,0.6,0.8,1"},
                       {"hit.fixed", "0.1"},
                       {"hit.runs", "10000"},
                       {"hit.max_steps", "1000000"}};

const Defaults kArbStep = {{"pool.x_a", "15000"},   {"pool.x_b", "15000"},  {"arb.alpha", "1.02"},
                           {"arb.strategy", "optimal"}, {"fee.fee", "0.005"}, {"fee.b_to_a", ""},
                           {"fee.a_to_b", ""},        {"fee.flashloan", "0"}, {"fee.txn", "0"}};

const Defaults kMarket = {{"gbm.p0", "1"},
                          {"gbm.mu", "0"},
                          {"gbm.sigma", "0.001"},
                          {"gbm.steps", "1000"},
                          {"gbm.increments", "binary"},
                          {"pool.x_a", "15000"},
                          {"pool.x_b", "15000"},
                          {"arb.strategy", "optimal"},
                          {"fee.flashloan", "0"},
                          {"fee.txn", "0"}};

const Defaults kSweepExtra = {
    {"sweep.runs", "1000"},
    {"sweep.fees", "0.0001,0.0002,0.0003,0.0005,0.0007,0.001,0.0015,0.002,0.003,0.005,0.007,0.01"}};

const Defaults kPolicyExtra = {{"sim.runs", "1000"},          {"policy.kind", "adaptive"},
                               {"policy.fee", "0.003"},       {"policy.b_to_a", "0.003"},
                               {"policy.a_to_b", "0.003"},    {"policy.base_fee", "0.003"},
                               {"policy.drift_gain", "10"},   {"policy.halflife", "50"},
                               {"policy.min_fee", "0"},       {"policy.max_fee", "0.05"}};

std::string leaf_of(const std::string& key) {
  const auto dot = key.rfind('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "walk") return Command::walk;
  if (name == "gbm") return Command::gbm;
  if (name == "hit-sweep") return Command::hit_sweep;
  if (name == "arb-step") return Command::arb_step;
  if (name == "fee-sweep") return Command::fee_sweep;
  if (name == "policy-sim") return Command::policy_sim;
  throw UsageError("unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::walk: return "walk";
    case Command::gbm: return "gbm";
    case Command::hit_sweep: return "hit-sweep";
    case Command::arb_step: return "arb-step";
    case Command::fee_sweep: return "fee-sweep";
    case Command::policy_sim: return "policy-sim";
  }
  return "?";
}

Settings::Settings(Command command) : command_(command) {
  auto add = [this](const Defaults& d) {
    for (const auto& [k, v] : d) values_[k] = v;
  };
  switch (command) {
    case Command::walk: add(kWalk); break;
    case Command::gbm: add(kGbm); break;
    case Command::hit_sweep: add(kHit); break;
    case Command::arb_step: add(kArbStep); break;
    case Command::fee_sweep:
      add(kMarket);
      add(kSweepExtra);
      break;
    case Command::policy_sim:
      add(kMarket);
      add(kPolicyExtra);
      break;
  }
}

std::string Settings::resolve(const std::string& key) const {
  if (values_.count(key)) return key;
  if (key.find('.') != std::string::npos) {
    throw UsageError("unknown key '" + key + "' for command " + command_name(command_));
  }
  std::string found;
  for (const auto& [k, v] : values_) {
    if (leaf_of(k) != key) continue;
    if (!found.empty()) throw UsageError("ambiguous key '" + key + "'; qualify it (e.g. " + k + ")");
    found = k;
  }
  if (found.empty()) throw UsageError("unknown key '" + key + "' for command " + command_name(command_));
  return found;
}

bool Settings::has_leaf(const std::string& leaf) const {
  for (const auto& [k, v] : values_) {
    if (leaf_of(k) == leaf) return true;
  }
  return false;
}

void Settings::set(const std::string& key, const std::string& value) {
  // No valid value contains whitespace; dropping it keeps header lines one token per key.
  std::string v;
  for (char c : value) {
    if (!std::isspace(static_cast<unsigned char>(c))) v += c;
  }
  values_[resolve(key)] = v;
}

const std::string& Settings::get(const std::string& key) const { return values_.at(resolve(key)); }

double Settings::number(const std::string& key) const {
  const std::string& s = get(key);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("key '" + resolve(key) + "' expects a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t Settings::integer(const std::string& key) const {
  const std::string& s = get(key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("key '" + resolve(key) + "' expects a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> Settings::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw UsageError("key '" + resolve(key) + "' expects a comma-separated list of numbers");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path,
                                                                  Command command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;

  const std::string header = "# arbsim ";
  if (std::getline(in, line) && line.rfind(header, 0) == 0) {
    std::stringstream ss(line.substr(header.size()));
    std::string token;
    ss >> token;
    if (token != command_name(command)) {
      throw UsageError("config header is for command '" + token + "', not " + command_name(command));
    }
    while (ss >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw UsageError("malformed header token '" + token + "'");
      out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    return out;
  }

  std::size_t lineno = 0;
  do {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  } while (std::getline(in, line));
  return out;
}

}  // namespace arbsim::cli
