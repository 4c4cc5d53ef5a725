#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

#include "arbsim/error.hpp"
#include "arbsim/experiments.hpp"
#include "arbsim/rng.hpp"
#include "cli/cli.hpp"
#include "cli/csv.hpp"
#include "cli/svg.hpp"

namespace arbsim::cli {

namespace {

std::string fmt(double v) { return format_number(v); }

ArbStrategy parse_strategy(const std::string& s) {
  if (s == "optimal") return ArbStrategy::optimal;
  if (s == "match" || s == "matching" || s == "match_price") return ArbStrategy::match_price;
  throw UsageError("arb.strategy must be 'optimal' or 'match', got '" + s + "'");
}

IncrementKind parse_increments(const std::string& s) {
  if (s == "binary") return IncrementKind::binary;
  if (s == "gaussian") return IncrementKind::gaussian;
  throw UsageError("gbm.increments must be 'binary' or 'gaussian', got '" + s + "'");
}

ThresholdMode parse_mode(std::string s) {
  for (char& c : s) {
    if (c == '-') c = '_';
  }
  if (s == "symmetric") return ThresholdMode::symmetric;
  if (s == "upper_only" || s == "upper") return ThresholdMode::upper_only;
  if (s == "fixed_lower") return ThresholdMode::fixed_lower;
  if (s == "fixed_upper") return ThresholdMode::fixed_upper;
  throw UsageError("hit.mode must be symmetric, upper_only, fixed_lower or fixed_upper, got '" + s + "'");
}

const char* direction_name(ArbDirection d) {
  switch (d) {
    case ArbDirection::none: return "none";
    case ArbDirection::b_in_a_out: return "b_in_a_out";
    case ArbDirection::a_in_b_out: return "a_in_b_out";
  }
  return "?";
}

WalkParams walk_params(const Settings& s, std::uint64_t seed) {
  WalkParams p;
  p.p0 = s.number("walk.p0");
  p.sigma = s.number("walk.sigma");
  p.p_up = s.number("walk.p_up");
  if (s.has_leaf("steps")) p.n_steps = s.integer("walk.steps");
  p.seed = seed;
  return p;
}

GbmParams gbm_params(const Settings& s, std::uint64_t seed) {
  GbmParams p;
  p.p0 = s.number("gbm.p0");
  p.mu = s.number("gbm.mu");
  p.sigma = s.number("gbm.sigma");
  p.n_steps = s.integer("gbm.steps");
  p.increments = parse_increments(s.get("gbm.increments"));
  p.seed = seed;
  return p;
}

ExperimentConfig experiment_config(const CliConfig& cfg) {
  const Settings& s = cfg.settings;
  ExperimentConfig e;
  e.gbm = gbm_params(s, 0);
  e.x_a = s.number("pool.x_a");
  e.x_b = s.number("pool.x_b");
  e.strategy = parse_strategy(s.get("arb.strategy"));
  e.f_fl = s.number("fee.flashloan");
  e.txn = s.number("fee.txn");
  e.master_seed = cfg.master_seed;
  e.threads = cfg.threads;
  return e;
}

FeePolicy policy_from(const Settings& s) {
  const std::string& kind = s.get("policy.kind");
  if (kind == "static") return StaticSymmetric{s.number("policy.fee")};
  if (kind == "asymmetric") return StaticAsymmetric{s.number("policy.b_to_a"), s.number("policy.a_to_b")};
  if (kind == "adaptive") {
    DirectionalAdaptive p;
    p.base_fee = s.number("policy.base_fee");
    p.drift_gain = s.number("policy.drift_gain");
    p.halflife = s.number("policy.halflife");
    p.min_fee = s.number("policy.min_fee");
    p.max_fee = s.number("policy.max_fee");
    return p;
  }
  throw UsageError("policy.kind must be static, asymmetric or adaptive, got '" + kind + "'");
}

class Outputs {
 public:
  Outputs(const CliConfig& cfg) : cfg_(cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + cfg.output_dir.string() + "'");
  }

  std::filesystem::path path(const std::string& suffix) const {
    return cfg_.output_dir / (command_name(cfg_.command) + suffix);
  }

  void csv(const CsvTable& table, std::ostream& out) const {
    const auto p = path(".csv");
    write_file_atomically(p, table.render(metadata_header(cfg_)));
    out << "wrote " << p.string() << "\n";
  }

  void svg(const Plot& plot, const std::string& suffix, std::ostream& out) const {
    if (!cfg_.plot) return;
    const auto p = path(suffix + ".svg");
    write_file_atomically(p, render_svg(plot));
    out << "wrote " << p.string() << "\n";
  }

  void jsonl(const std::string& body, std::ostream& out) const {
    const auto p = path(".jsonl");
    write_file_atomically(p, "{\"header\":" + nlohmann::json(metadata_header(cfg_)).dump() + "}\n" + body);
    out << "wrote " << p.string() << "\n";
  }

 private:
  const CliConfig& cfg_;
};

void append_run(std::string& body, double fee, std::size_t run, const RunResult& r) {
  nlohmann::ordered_json j;
  j["fee"] = fee;
  j["run"] = run;
  j["fee_a"] = r.fee_a;
  j["fee_b"] = r.fee_b;
  j["arb_profit_a"] = r.arb_profit_a;
  j["arb_profit_b"] = r.arb_profit_b;
  j["arb_profit_total"] = r.arb_profit_total;
  j["n_attempts"] = r.n_attempts;
  j["n_executed"] = r.n_executed;
  j["final_spot"] = r.final_spot;
  j["final_cex"] = r.final_cex;
  body += j.dump();
  body += '\n';
}

void write_path(const CliConfig& cfg, const PricePath& path, std::ostream& out) {
  Outputs outputs(cfg);
  CsvTable table({"step", "price"});
  Series series{"price", {}, {}, {}, true};
  for (std::size_t i = 0; i < path.prices.size(); ++i) {
    table.row().add(static_cast<std::uint64_t>(i)).add(path.prices[i]);
    series.x.push_back(static_cast<double>(i));
    series.y.push_back(path.prices[i]);
  }
  outputs.csv(table, out);
  out << "final price " << fmt(path.prices.back()) << "\n";
  outputs.svg(Plot{command_name(cfg.command) + " path", "step", "price", false, false, {series}}, "", out);
}

void cmd_walk(const CliConfig& cfg, std::ostream& out) {
  write_path(cfg, gen_random_walk(walk_params(cfg.settings, cfg.master_seed)), out);
}

void cmd_gbm(const CliConfig& cfg, std::ostream& out) {
  write_path(cfg, gen_gbm_path(gbm_params(cfg.settings, cfg.master_seed)), out);
}

void cmd_hit_sweep(const CliConfig& cfg, std::ostream& out) {
  const Settings& s = cfg.settings;
  const WalkParams walk = walk_params(s, cfg.master_seed);
  const ThresholdMode mode = parse_mode(s.get("hit.mode"));
  ThresholdSpec templ;
  templ.max_steps = s.integer("hit.max_steps");
  if (mode == ThresholdMode::fixed_lower) templ.lower = s.number("hit.fixed");
  if (mode == ThresholdMode::fixed_upper) templ.upper = s.number("hit.fixed");
  const std::vector<double> grid = s.numbers("hit.grid");

  const auto table = sweep_thresholds(walk, templ, mode, grid, s.integer("hit.runs"), cfg.threads);

  Outputs outputs(cfg);
  CsvTable csv({"delta_p", "mean_steps", "std_error", "censored_fraction"});
  Series series{"mean hitting time", {}, {}, {}, false};
  for (const SweepPoint& p : table) {
    csv.row().add(p.delta_p).add(p.estimate.mean_steps).add(p.estimate.std_error).add(p.estimate.censored_fraction());
    series.x.push_back(p.delta_p);
    series.y.push_back(p.estimate.mean_steps);
    series.err.push_back(p.estimate.std_error);
  }
  outputs.csv(csv, out);

  try {
    const PowerLawFit fit = fit_power_law(table);
    out << "power law: exponent " << fmt(fit.exponent) << " amplitude " << fmt(fit.amplitude) << " r2 "
        << fmt(fit.r_squared) << "\n";
  } catch (const std::exception& e) {
    out << "power law: not fitted (" << e.what() << ")\n";
  }
  outputs.svg(Plot{"hitting time", "threshold offset", "mean steps", true, true, {series}}, "", out);
}

void cmd_arb_step(const CliConfig& cfg, std::ostream& out) {
  const Settings& s = cfg.settings;
  PoolState pool = new_pool(s.number("pool.x_a"), s.number("pool.x_b"));
  const double a = s.number("arb.alpha");
  if (!(a > 0.0)) throw UsageError("arb.alpha must be positive");
  const double p_cex = a * pool.spot();
  const double f = s.number("fee.fee");
  FeeSchedule fees;
  fees.f_b_to_a = s.get("fee.b_to_a").empty() ? f : s.number("fee.b_to_a");
  fees.f_a_to_b = s.get("fee.a_to_b").empty() ? f : s.number("fee.a_to_b");
  fees.f_fl = s.number("fee.flashloan");
  fees.txn = s.number("fee.txn");
  const ArbStrategy strategy = parse_strategy(s.get("arb.strategy"));
  validate(fees);

  const PoolState before = pool;
  FeeLedger ledger;
  const ArbOutcome o = arbitrage_step(pool, ledger, p_cex, strategy, fees);

  const bool up = a >= 1.0;
  const double leg_fee = up ? fees.f_b_to_a : fees.f_a_to_b;
  const double leg_alpha = up ? a : 1.0 / a;
  out << "alpha " << fmt(a) << " alpha_min " << fmt(min_alpha(strategy, leg_fee, fees.f_fl)) << "\n";
  out << "direction " << direction_name(o.direction) << " flashloan " << fmt(o.flashloan) << " profit "
      << fmt(o.arb_profit) << " fee " << fmt(o.fee_revenue) << " (token " << (o.fee_token == Token::a ? "A" : "B")
      << ")\n";

  Outputs outputs(cfg);
  CsvTable csv({"alpha", "executed", "direction", "flashloan", "arb_profit", "fee_token", "fee_revenue",
                "spot_after", "alpha_after"});
  csv.row()
      .add(a)
      .add(std::string(o.executed ? "1" : "0"))
      .add(std::string(direction_name(o.direction)))
      .add(o.flashloan)
      .add(o.arb_profit)
      .add(std::string(o.fee_token == Token::a ? "A" : "B"))
      .add(o.fee_revenue)
      .add(o.spot_after)
      .add(o.alpha_after);
  outputs.csv(csv, out);

  // Profit as a function of trade size, in the input token.
  const double x_in = up ? before.x_b : before.x_a;
  const double txn_in = up ? fees.txn : fees.txn / p_cex;
  const double g = (1.0 - leg_fee);
  const double top = leg_alpha > 1.0 ? x_in * (std::sqrt(leg_alpha) - 1.0) / g * 2.0 : x_in * 0.01;
  Series curve{"profit", {}, {}, {}, true};
  for (int i = 0; i <= 200; ++i) {
    const double size = top * i / 200.0;
    curve.x.push_back(size);
    curve.y.push_back(realized_profit(leg_alpha, leg_fee, x_in, size, fees.f_fl, txn_in));
  }
  Series chosen{"executed size", {o.flashloan}, {o.arb_profit}, {}, false};
  outputs.svg(Plot{"arbitrage profit versus size", "flashloan", "profit", false, false, {curve, chosen}}, "", out);
}

void cmd_fee_sweep(const CliConfig& cfg, std::ostream& out) {
  ExperimentConfig e = experiment_config(cfg);
  e.n_runs = cfg.settings.integer("sweep.runs");
  e.fee_grid = cfg.settings.numbers("sweep.fees");
  validate(e);
  const SweepReport report = run_sweep(e);

  Outputs outputs(cfg);
  CsvTable csv({"fee", "mean_fee_a", "se_fee_a", "mean_fee_b", "se_fee_b", "exec_frequency", "se_frequency"});
  Series rev_a{"token A", {}, {}, {}, false}, rev_b{"token B", {}, {}, {}, false};
  Series freq{"frequency", {}, {}, {}, false};
  for (const SweepRow& r : report.rows) {
    csv.row().add(r.fee).add(r.mean_fee_a).add(r.se_fee_a).add(r.mean_fee_b).add(r.se_fee_b).add(r.exec_frequency).add(
        r.se_frequency);
    rev_a.x.push_back(r.fee);
    rev_a.y.push_back(r.mean_fee_a);
    rev_a.err.push_back(r.se_fee_a);
    rev_b.x.push_back(r.fee);
    rev_b.y.push_back(r.mean_fee_b);
    rev_b.err.push_back(r.se_fee_b);
    freq.x.push_back(r.fee);
    freq.y.push_back(r.exec_frequency);
    freq.err.push_back(r.se_frequency);
  }
  outputs.csv(csv, out);

  try {
    const PowerLawFit fit = frequency_scaling(report.rows);
    out << "frequency scaling: exponent " << fmt(fit.exponent) << " r2 " << fmt(fit.r_squared) << "\n";
  } catch (const std::exception& ex) {
    out << "frequency scaling: not fitted (" << ex.what() << ")\n";
  }

  if (cfg.jsonl) {
    std::string body;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
      for (std::size_t i = 0; i < report.runs[k].size(); ++i) append_run(body, report.rows[k].fee, i, report.runs[k][i]);
    }
    outputs.jsonl(body, out);
  }
  outputs.svg(Plot{"fee revenue per run", "fee", "mean fees", true, false, {rev_a, rev_b}}, "", out);
  outputs.svg(Plot{"arbitrage frequency", "fee", "executed / attempted", true, true, {freq}}, "-frequency", out);
}

void cmd_policy_sim(const CliConfig& cfg, std::ostream& out) {
  ExperimentConfig e = experiment_config(cfg);
  e.n_runs = cfg.settings.integer("sim.runs");
  e.policy = policy_from(cfg.settings);
  validate(e);

  std::vector<std::pair<std::string, FeePolicy>> policies{{cfg.settings.get("policy.kind"), e.policy}};
  if (!std::holds_alternative<StaticSymmetric>(e.policy)) {
    policies.emplace_back("static", StaticSymmetric{cfg.settings.number("policy.fee")});
  }

  Outputs outputs(cfg);
  CsvTable csv({"policy", "mean_fee_a", "se_fee_a", "mean_fee_b", "se_fee_b", "exec_frequency", "se_frequency",
                "mean_arb_profit", "mean_amm_fee", "retention"});
  std::string body;
  for (const auto& [name, policy] : policies) {
    ExperimentConfig run_cfg = e;
    run_cfg.policy = policy;
    const auto runs = run_ensemble(run_cfg);
    const SweepRow row = summarize(runs);
    const LvrSummary lvr = lvr_accounting(runs);
    csv.row()
        .add(name)
        .add(row.mean_fee_a)
        .add(row.se_fee_a)
        .add(row.mean_fee_b)
        .add(row.se_fee_b)
        .add(row.exec_frequency)
        .add(row.se_frequency)
        .add(lvr.mean_arb_profit)
        .add(lvr.mean_amm_fee)
        .add(lvr.defined ? lvr.retention_fraction : std::nan(""));
    out << name << ": fees A " << fmt(row.mean_fee_a) << " B " << fmt(row.mean_fee_b) << " retention "
        << (lvr.defined ? fmt(lvr.retention_fraction) : std::string("undefined")) << "\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (cfg.jsonl) append_run(body, std::nan(""), i, runs[i]);
    }
  }
  outputs.csv(csv, out);
  if (cfg.jsonl) outputs.jsonl(body, out);

  if (cfg.plot) {
    std::vector<StepRecord> trace;
    run_single(e, e.policy, derive_seed(e.master_seed, 0), &trace);
    Series cex{"CEX price", {}, {}, {}, true}, spot{"pool spot", {}, {}, {}, true};
    for (const StepRecord& r : trace) {
      cex.x.push_back(static_cast<double>(r.step));
      cex.y.push_back(r.cex);
      spot.x.push_back(static_cast<double>(r.step));
      spot.y.push_back(r.outcome.spot_after);
    }
    outputs.svg(Plot{"run 0 prices", "step", "price", false, false, {cex, spot}}, "", out);
  }
}

}  // namespace

void dispatch(const CliConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::walk: return cmd_walk(config, out);
    case Command::gbm: return cmd_gbm(config, out);
    case Command::hit_sweep: return cmd_hit_sweep(config, out);
    case Command::arb_step: return cmd_arb_step(config, out);
    case Command::fee_sweep: return cmd_fee_sweep(config, out);
    case Command::policy_sim: return cmd_policy_sim(config, out);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "arbsim: " << e.what() << "\n";
    return 1;
  }
  try {
    dispatch(config, out);
  } catch (const UsageError& e) {
    err << "arbsim: " << e.what() << "\n";
    return 1;
  } catch (const ParameterError& e) {
    err << "arbsim: invalid parameter: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "arbsim: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace arbsim::cli
