#include "arbsim/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "arbsim/error.hpp"

namespace arbsim {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.gbm = {1.0, 0.0, 0.001, 300, 0, IncrementKind::binary};
  c.n_runs = 40;
  c.fee_grid = {0.001, 0.002, 0.004, 0.008};
  c.master_seed = 5;
  c.threads = 1;
  return c;
}

TEST(RunSingle, NoVolatilityNoTrades) {
  ExperimentConfig c = small_config();
  c.gbm.sigma = 0.0;
  const auto r = run_single(c, 0);
  EXPECT_EQ(r.n_attempts, 300u);
  EXPECT_EQ(r.n_executed, 0u);
  EXPECT_EQ(r.fee_a, 0.0);
  EXPECT_EQ(r.fee_b, 0.0);
}

TEST(RunSingle, ZeroFeeTracksCexExactly) {
  ExperimentConfig c = small_config();
  std::vector<StepRecord> trace;
  run_single(c, StaticSymmetric{0.0}, 77, &trace);
  ASSERT_EQ(trace.size(), 300u);
  for (const auto& step : trace) {
    ASSERT_NEAR(step.outcome.spot_after / step.cex, 1.0, 1e-9) << step.step;
  }
}

// Fig.-9-style trajectory: every executed step leaves spot = p_cex (1 -+ f).
TEST(RunSingle, OptimalTrajectoryUndershootsByFee) {
  ExperimentConfig c = small_config();
  c.gbm.sigma = 0.01;
  c.gbm.n_steps = 30;
  const double f = 0.005;
  std::vector<StepRecord> trace;
  const auto r = run_single(c, StaticSymmetric{f}, 3, &trace);
  ASSERT_GT(r.n_executed, 0u);
  ASSERT_LT(r.n_executed, 30u);
  for (const auto& step : trace) {
    if (!step.outcome.executed) continue;
    const double expected = step.outcome.direction == ArbDirection::b_in_a_out ? step.cex * (1 - f)
                                                                               : step.cex / (1 - f);
    EXPECT_NEAR(step.outcome.spot_after / expected, 1.0, 1e-9);
  }
}

TEST(RunSingle, DeterministicPerRunIndex) {
  const ExperimentConfig c = small_config();
  const auto a = run_single(c, 7);
  const auto b = run_single(c, 7);
  EXPECT_EQ(a.fee_a, b.fee_a);
  EXPECT_EQ(a.fee_b, b.fee_b);
  EXPECT_EQ(a.final_cex, b.final_cex);
}

TEST(RunSingle, AdaptivePolicyRuns) {
  ExperimentConfig c = small_config();
  c.gbm.mu = 0.0001;
  c.policy = DirectionalAdaptive{0.002, 10.0, 20.0, 0.0005, 0.01};
  const auto runs = run_ensemble(c);
  ASSERT_EQ(runs.size(), 40u);
  for (const auto& r : runs) {
    EXPECT_EQ(r.n_attempts, 300u);
    EXPECT_LE(r.n_executed, r.n_attempts);
    EXPECT_GE(r.fee_a, 0.0);
    EXPECT_GE(r.fee_b, 0.0);
  }
}

TEST(RunSweep, ReproducibleAcrossThreadCounts) {
  ExperimentConfig c = small_config();
  c.threads = 1;
  const auto serial = run_sweep(c);
  c.threads = 4;
  const auto parallel = run_sweep(c);
  ASSERT_EQ(serial.rows.size(), parallel.rows.size());
  for (std::size_t k = 0; k < serial.rows.size(); ++k) {
    EXPECT_EQ(serial.rows[k].mean_fee_a, parallel.rows[k].mean_fee_a);
    EXPECT_EQ(serial.rows[k].se_fee_b, parallel.rows[k].se_fee_b);
    EXPECT_EQ(serial.rows[k].exec_frequency, parallel.rows[k].exec_frequency);
  }
}

TEST(RunSweep, RowInvariants) {
  const auto report = run_sweep(small_config());
  ASSERT_EQ(report.rows.size(), 4u);
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& row = report.rows[k];
    EXPECT_EQ(row.fee, small_config().fee_grid[k]);
    EXPECT_GE(row.exec_frequency, 0.0);
    EXPECT_LE(row.exec_frequency, 1.0);
    for (const auto& run : report.runs[k]) EXPECT_EQ(run.n_attempts, 300u);
  }
}

TEST(RunSweep, RejectsBadGrid) {
  ExperimentConfig c = small_config();
  c.fee_grid = {0.002, 0.001};
  EXPECT_THROW(run_sweep(c), ParameterError);
  c.fee_grid = {};
  EXPECT_THROW(run_sweep(c), ParameterError);
  c.fee_grid = {0.5, 1.0};
  EXPECT_THROW(run_sweep(c), ParameterError);
}

TEST(FrequencyScaling, SyntheticInverseLaw) {
  std::vector<SweepRow> rows;
  for (double f : {0.001, 0.002, 0.004, 0.008, 0.016}) {
    SweepRow r;
    r.fee = f;
    r.exec_frequency = 0.0005 / f;
    rows.push_back(r);
  }
  const auto fit = frequency_scaling(rows);
  EXPECT_NEAR(fit.exponent, -1.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  rows.resize(3);
  EXPECT_THROW(frequency_scaling(rows), ParameterError);
}

TEST(LvrAccounting, ZeroFeeRetainsNothing) {
  ExperimentConfig c = small_config();
  c.policy = StaticSymmetric{0.0};
  const auto s = lvr_accounting(run_ensemble(c));
  EXPECT_TRUE(s.defined);
  EXPECT_EQ(s.retention_fraction, 0.0);
  EXPECT_GT(s.mean_arb_profit, 0.0);
}

TEST(LvrAccounting, NoActivityIsUndefined) {
  ExperimentConfig c = small_config();
  c.gbm.sigma = 0.0;
  EXPECT_FALSE(lvr_accounting(run_ensemble(c)).defined);
  EXPECT_THROW(lvr_accounting(std::vector<RunResult>{}), EmptyInputError);
}

// One CEX jump from 1 to 1.0201 with f = 0.01 reproduces the 2:1 split.
TEST(LvrAccounting, SingleStepRetention) {
  ExperimentConfig c = small_config();
  c.gbm = {1.0, 0.0201, 0.0, 1, 0, IncrementKind::binary};
  c.n_runs = 3;
  c.policy = StaticSymmetric{0.01};
  const auto s = lvr_accounting(run_ensemble(c));
  ASSERT_TRUE(s.defined);
  EXPECT_NEAR(s.retention_fraction, 2.0 / 3.0, 0.03 * 2.0 / 3.0);
}

}  // namespace
}  // namespace arbsim
