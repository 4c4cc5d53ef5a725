#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>

#include "cli/cli.hpp"

namespace arbsim::cli {

namespace {

// Named flag -> settings leaf. A flag exists on a subcommand only when the
// command has a key with that leaf.
const std::pair<const char*, const char*> kNamedFlags[] = {
    {"--runs", "runs"},         {"--steps", "steps"},       {"--sigma", "sigma"},
    {"--mu", "mu"},             {"--p0", "p0"},             {"--p-up", "p_up"},
    {"--fee", "fee"},           {"--fees", "fees"},         {"--alpha", "alpha"},
    {"--strategy", "strategy"}, {"--x-a", "x_a"},           {"--x-b", "x_b"},
    {"--mode", "mode"},         {"--grid", "grid"},         {"--fixed", "fixed"},
    {"--max-steps", "max_steps"}, {"--increments", "increments"}, {"--policy", "kind"},
};

const char* const kCommands[] = {"walk", "gbm", "hit-sweep", "arb-step", "fee-sweep", "policy-sim"};

const char* const kDescriptions[] = {
    "simulate an additive random walk",
    "simulate a geometric Brownian motion path",
    "hitting time versus threshold, with power-law fit",
    "one arbitrage step against a mispriced pool",
    "Monte Carlo fee sweep: revenue and arbitrage frequency per fee",
    "Monte Carlo run of a fee policy with LVR accounting",
};

std::uint64_t parse_seed(const std::string& s, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError(where + " expects a non-negative integer seed, got '" + s + "'");
  }
  return v;
}

unsigned parse_threads(const std::string& s, const std::string& where) {
  const std::uint64_t v = parse_seed(s, where);
  if (v > 4096) throw UsageError(where + " must be at most 4096");
  return static_cast<unsigned>(v);
}

struct SubOptions {
  std::string config;
  std::string out = ".";
  std::string seed;
  std::string threads;
  bool plot = false;
  bool jsonl = false;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> named;  // leaf, value
};

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args, const std::optional<std::string>& env_seed) {
  CLI::App app{"arbsim: AMM arbitrage and fee simulator", "arbsim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every command");

  std::vector<SubOptions> opts(std::size(kCommands));
  std::vector<std::vector<std::string>> named_values(std::size(kCommands),
                                                     std::vector<std::string>(std::size(kNamedFlags)));
  std::vector<CLI::App*> subs;
  for (std::size_t c = 0; c < std::size(kCommands); ++c) {
    CLI::App* sub = app.add_subcommand(kCommands[c], kDescriptions[c]);
    SubOptions& o = opts[c];
    sub->add_option("--config", o.config, "key = value config file (or a previous output)");
    sub->add_option("-o,--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "master seed (falls back to ARBSIM_SEED, then 1)");
    sub->add_option("--threads", o.threads, "worker threads, 0 for all cores");
    sub->add_flag("--plot", o.plot, "also write SVG plots");
    if (c >= 4) sub->add_flag("--jsonl", o.jsonl, "also write per-run results as JSON lines");
    sub->add_option("--set", o.sets, "override any key: --set gbm.sigma=0.002")->take_all();

    const Settings probe(parse_command(kCommands[c]));
    for (std::size_t f = 0; f < std::size(kNamedFlags); ++f) {
      const auto& [flag, leaf] = kNamedFlags[f];
      if (!probe.has_leaf(leaf)) continue;
      sub->add_option(flag, named_values[c][f], std::string("sets ") + probe.resolve(leaf));
    }
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (CLI::App* sub : subs) {
      if (sub->parsed()) throw HelpRequested(sub->help());
    }
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::size_t c = 0;
  while (!subs[c]->parsed()) ++c;
  const SubOptions& o = opts[c];
  CliConfig config;
  config.command = parse_command(kCommands[c]);
  config.settings = Settings(config.command);
  config.output_dir = o.out;
  config.plot = o.plot;
  config.jsonl = o.jsonl;

  if (env_seed && !env_seed->empty()) config.master_seed = parse_seed(*env_seed, "ARBSIM_SEED");

  if (!o.config.empty()) {
    config.config_path = o.config;
    for (const auto& [key, value] : read_config_file(o.config, config.command)) {
      if (key == "seed") {
        config.master_seed = parse_seed(value, "config key 'seed'");
      } else if (key == "threads") {
        config.threads = parse_threads(value, "config key 'threads'");
      } else {
        config.settings.set(key, value);
      }
    }
  }

  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "seed") {
      config.master_seed = parse_seed(value, "--set seed");
    } else if (key == "threads") {
      config.threads = parse_threads(value, "--set threads");
    } else {
      config.overrides.emplace_back(config.settings.resolve(key), value);
    }
  }
  for (std::size_t f = 0; f < std::size(kNamedFlags); ++f) {
    const auto& [flag, leaf] = kNamedFlags[f];
    const CLI::Option* opt = subs[c]->get_option_no_throw(flag);
    if (opt == nullptr || opt->count() == 0) continue;
    config.overrides.emplace_back(config.settings.resolve(leaf), named_values[c][f]);
  }
  for (const auto& [key, value] : config.overrides) config.settings.set(key, value);

  if (!o.seed.empty()) config.master_seed = parse_seed(o.seed, "--seed");
  if (!o.threads.empty()) config.threads = parse_threads(o.threads, "--threads");
  return config;
}

CliConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  std::optional<std::string> env;
  if (const char* s = std::getenv("ARBSIM_SEED")) env = s;
  return parse_args(args, env);
}

std::string metadata_header(const CliConfig& config) {
  std::string out = "arbsim " + command_name(config.command) + " seed=" + std::to_string(config.master_seed);
  for (const auto& [key, value] : config.settings.entries()) out += " " + key + "=" + value;
  return out;
}

}  // namespace arbsim::cli
