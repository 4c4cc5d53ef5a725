#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbsim/arbitrage.hpp"
#include "arbsim/feepolicy.hpp"
#include "arbsim/hitting.hpp"
#include "arbsim/stochastic.hpp"

namespace arbsim {

/// Monte Carlo setup: a CEX price process, an initial pool, and how the
/// arbitrageur and the fee policy behave. gbm.seed is ignored; run seeds
/// come from master_seed.
struct ExperimentConfig {
  GbmParams gbm{1.0, 0.0, 0.001, 1000, 0, IncrementKind::binary};
  std::uint64_t n_runs = 1000;
  double x_a = 15000.0;
  double x_b = 15000.0;
  ArbStrategy strategy = ArbStrategy::optimal;
  FeePolicy policy = StaticSymmetric{0.003};
  std::vector<double> fee_grid;
  std::uint64_t master_seed = 1;
  double f_fl = 0.0;
  double txn = 0.0;
  unsigned threads = 0;  // 0: one worker per hardware thread
};

void validate(const ExperimentConfig& config);

struct RunResult {
  double fee_a = 0.0;
  double fee_b = 0.0;
  double arb_profit_a = 0.0;      // from A-in trades
  double arb_profit_b = 0.0;      // from B-in trades
  double arb_profit_total = 0.0;  // in B, A valued at final_cex
  std::uint64_t n_attempts = 0;
  std::uint64_t n_executed = 0;
  double final_spot = 0.0;
  double final_cex = 0.0;
};

/// Observer invoked after every step of run_single; used for trajectories.
struct StepRecord {
  std::uint64_t step = 0;
  double cex = 0.0;
  ArbOutcome outcome;
};

/// Evolves one CEX path and attempts an arbitrage after every step with
/// fees from `policy`. The path is seeded with run_seed.
RunResult run_single(const ExperimentConfig& config, const FeePolicy& policy,
                     std::uint64_t run_seed, std::vector<StepRecord>* trace = nullptr);

/// Run `run_index` of config.policy, seeded derive_seed(master_seed, run_index).
RunResult run_single(const ExperimentConfig& config, std::uint64_t run_index);

/// Every run of config.policy, in run-index order.
std::vector<RunResult> run_ensemble(const ExperimentConfig& config);

struct SweepRow {
  double fee = 0.0;
  double mean_fee_a = 0.0;
  double se_fee_a = 0.0;
  double mean_fee_b = 0.0;
  double se_fee_b = 0.0;
  double exec_frequency = 0.0;
  double se_frequency = 0.0;
};

/// Run-level means and standard errors (runs are the independent unit).
SweepRow summarize(std::span<const RunResult> runs, double fee = 0.0);

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<std::vector<RunResult>> runs;  // runs[k] belongs to rows[k]
};

/// For fee_grid[k], n_runs runs of StaticSymmetric{fee_grid[k]} seeded
/// derive_seed(derive_seed(master_seed, k), i). Output does not depend on
/// the thread count.
SweepReport run_sweep(const ExperimentConfig& config);

/// Log-log fit of execution frequency against fee over rows with positive
/// fee and frequency. Needs at least four such rows.
PowerLawFit frequency_scaling(std::span<const SweepRow> rows);

struct LvrSummary {
  double mean_arb_profit = 0.0;  // in B
  double mean_amm_fee = 0.0;     // in B, A valued at final_cex
  double retention_fraction = 0.0;
  bool defined = false;  // false when nothing traded
};

/// Share of the total arbitrage value the pool keeps as fees.
LvrSummary lvr_accounting(std::span<const RunResult> runs);

}  // namespace arbsim
