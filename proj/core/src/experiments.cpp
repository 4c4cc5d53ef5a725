#include "arbsim/experiments.hpp"

#include <cmath>

#include "arbsim/error.hpp"
#include "arbsim/parallel.hpp"
#include "arbsim/rng.hpp"

namespace arbsim {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

template <typename Get>
MeanSe mean_se(std::span<const RunResult> runs, Get get) {
  const double n = static_cast<double>(runs.size());
  double sum = 0.0;
  for (const auto& r : runs) sum += get(r);
  MeanSe out;
  out.mean = sum / n;
  if (runs.size() > 1) {
    double ss = 0.0;
    for (const auto& r : runs) {
      const double d = get(r) - out.mean;
      ss += d * d;
    }
    out.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.gbm);
  if (config.n_runs < 1) throw ParameterError("experiment: n_runs must be >= 1");
  new_pool(config.x_a, config.x_b);
  validate(config.policy);
  if (!(config.f_fl >= 0.0) || !(config.txn >= 0.0)) {
    throw ParameterError("experiment: flashloan fee and txn must be >= 0");
  }
  for (std::size_t i = 0; i < config.fee_grid.size(); ++i) {
    const double f = config.fee_grid[i];
    if (!(f >= 0.0 && f < 1.0)) throw ParameterError("experiment: grid fees must lie in [0, 1)");
    if (i > 0 && !(f > config.fee_grid[i - 1])) {
      throw ParameterError("experiment: fee grid must be strictly increasing");
    }
  }
}

RunResult run_single(const ExperimentConfig& config, const FeePolicy& policy,
                     std::uint64_t run_seed, std::vector<StepRecord>* trace) {
  GbmParams gbm_params = config.gbm;
  gbm_params.seed = run_seed;
  GbmProcess cex(gbm_params);
  PoolState pool = new_pool(config.x_a, config.x_b);
  FeeLedger ledger;
  PolicyState state = initial_state(policy);

  RunResult r;
  for (std::uint64_t t = 1; t <= gbm_params.n_steps; ++t) {
    const double before = cex.price();
    const double now = cex.step();
    state = policy_update(policy, state, now / before - 1.0);
    const FeeSchedule fees = to_schedule(state.last_fees, config.f_fl, config.txn);
    const ArbOutcome out = arbitrage_step(pool, ledger, now, config.strategy, fees);
    ++r.n_attempts;
    if (out.executed) {
      ++r.n_executed;
      (out.direction == ArbDirection::b_in_a_out ? r.arb_profit_b : r.arb_profit_a) +=
          out.arb_profit;
    }
    if (trace) trace->push_back({t, now, out});
  }
  r.fee_a = ledger.accrued_a;
  r.fee_b = ledger.accrued_b;
  r.final_spot = pool.spot();
  r.final_cex = cex.price();
  r.arb_profit_total = r.arb_profit_b + r.arb_profit_a * r.final_cex;
  return r;
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t run_index) {
  validate(config);
  return run_single(config, config.policy, derive_seed(config.master_seed, run_index));
}

std::vector<RunResult> run_ensemble(const ExperimentConfig& config) {
  validate(config);
  return parallel_map(config.n_runs, config.threads, [&](std::size_t i) {
    return run_single(config, config.policy, derive_seed(config.master_seed, i));
  });
}

SweepRow summarize(std::span<const RunResult> runs, double fee) {
  if (runs.empty()) throw EmptyInputError("summarize: no runs");
  SweepRow row;
  row.fee = fee;
  const auto a = mean_se(runs, [](const RunResult& r) { return r.fee_a; });
  const auto b = mean_se(runs, [](const RunResult& r) { return r.fee_b; });
  const auto freq = mean_se(runs, [](const RunResult& r) {
    return r.n_attempts == 0 ? 0.0
                             : static_cast<double>(r.n_executed) / static_cast<double>(r.n_attempts);
  });
  row.mean_fee_a = a.mean;
  row.se_fee_a = a.se;
  row.mean_fee_b = b.mean;
  row.se_fee_b = b.se;
  row.exec_frequency = freq.mean;
  row.se_frequency = freq.se;
  return row;
}

SweepReport run_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.fee_grid.empty()) throw ParameterError("run_sweep: fee grid is empty");

  const std::size_t rows = config.fee_grid.size();
  const std::size_t runs = config.n_runs;
  auto flat = parallel_map(rows * runs, config.threads, [&](std::size_t job) {
    const std::size_t k = job / runs;
    const std::size_t i = job % runs;
    const FeePolicy policy = StaticSymmetric{config.fee_grid[k]};
    return run_single(config, policy, derive_seed(derive_seed(config.master_seed, k), i));
  });

  SweepReport report;
  report.rows.reserve(rows);
  report.runs.reserve(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const auto first = flat.begin() + static_cast<std::ptrdiff_t>(k * runs);
    report.runs.emplace_back(first, first + static_cast<std::ptrdiff_t>(runs));
    report.rows.push_back(summarize(report.runs.back(), config.fee_grid[k]));
  }
  return report;
}

PowerLawFit frequency_scaling(std::span<const SweepRow> rows) {
  std::vector<double> fee;
  std::vector<double> freq;
  for (const auto& row : rows) {
    if (row.fee > 0.0 && row.exec_frequency > 0.0) {
      fee.push_back(row.fee);
      freq.push_back(row.exec_frequency);
    }
  }
  if (fee.size() < 4) {
    throw ParameterError("frequency_scaling: need at least 4 rows with positive fee and frequency");
  }
  return fit_power_law(fee, freq);
}

LvrSummary lvr_accounting(std::span<const RunResult> runs) {
  if (runs.empty()) throw EmptyInputError("lvr_accounting: no runs");
  double fees = 0.0;
  double arb = 0.0;
  for (const auto& r : runs) {
    fees += r.fee_b + r.fee_a * r.final_cex;
    arb += r.arb_profit_total;
  }
  const double n = static_cast<double>(runs.size());
  LvrSummary s;
  s.mean_amm_fee = fees / n;
  s.mean_arb_profit = arb / n;
  if (fees + arb > 0.0) {
    s.retention_fraction = fees / (fees + arb);
    s.defined = true;
  }
  return s;
}

}  // namespace arbsim
