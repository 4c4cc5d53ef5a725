#pragma once

#include <variant>

#include "arbsim/amm.hpp"

namespace arbsim {

/// f ~ sqrt(a) - 1, the small-fee approximation of the revenue-optimal fee.
/// Throws for a < 1; callers handle the mirrored direction by inverting a.
double optimal_fee_approx(double a);

/// Maximizer of R(f) = optimal_flashloan(a, f, x_in) * f over
/// f in (0, 1 - 1/a), found by golden-section search. Throws for a <= 1.
double optimal_fee_exact(double a, double x_in);

/// Fee revenue R(f) earned on one optimal arbitrage.
double fee_revenue(double a, double f, double x_in);

struct RevenueSplit {
  double amm_revenue = 0.0;
  double arb_profit = 0.0;
  double ratio = 0.0;     // amm_revenue / arb_profit
  double retained = 0.0;  // amm_revenue / (amm_revenue + arb_profit)
  bool defined = false;   // false at or below the arbitrage threshold
};

RevenueSplit revenue_split(double a, double f, double x_in);

struct StaticSymmetric {
  double fee = 0.0;
};

struct StaticAsymmetric {
  double f_b_to_a = 0.0;
  double f_a_to_b = 0.0;
};

/// Shifts a base fee by drift_gain times an exponentially weighted mean of
/// per-step CEX returns: an upward drift raises the fee on B-in swaps and
/// lowers it on A-in swaps. Both fees are clamped to [min_fee, max_fee].
struct DirectionalAdaptive {
  double base_fee = 0.003;
  double drift_gain = 10.0;
  double halflife = 50.0;  // in updates
  double min_fee = 0.0;
  double max_fee = 0.05;
};

using FeePolicy = std::variant<StaticSymmetric, StaticAsymmetric, DirectionalAdaptive>;

void validate(const FeePolicy& policy);

struct DirectionalFees {
  double f_b_to_a = 0.0;
  double f_a_to_b = 0.0;
};

struct PolicyState {
  double ewma_return = 0.0;
  DirectionalFees last_fees;
};

/// Starting state with ewma_return = 0 and the policy's resting fees.
PolicyState initial_state(const FeePolicy& policy);

DirectionalFees policy_fees(const FeePolicy& policy, const PolicyState& state);

/// Folds one observed relative return into the EWMA (decay 2^(-1/halflife))
/// and recomputes the fees. Static policies keep their constants.
PolicyState policy_update(const FeePolicy& policy, const PolicyState& state,
                          double observed_return);

/// Convenience: a FeeSchedule carrying the policy's current fees.
FeeSchedule to_schedule(const DirectionalFees& fees, double f_fl = 0.0, double txn = 0.0);

}  // namespace arbsim
