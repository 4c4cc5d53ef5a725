#pragma once

#include "arbsim/amm.hpp"

namespace arbsim {

enum class ArbStrategy {
  optimal,      // profit-maximizing flashloan size
  match_price,  // size that moves the pool spot onto the CEX price
};

enum class ArbDirection {
  none,
  b_in_a_out,  // CEX above pool: buy A from the pool with borrowed B
  a_in_b_out,  // CEX below pool: buy B from the pool with borrowed A
};

enum class Token { a, b };

/// Accounting for one arbitrage attempt. The flashloan and the profit are in
/// the borrowed (input) token; spot_after and the alphas are quoted B per A.
struct ArbOutcome {
  bool executed = false;
  ArbDirection direction = ArbDirection::none;
  double flashloan = 0.0;
  double arb_profit = 0.0;
  Token fee_token = Token::b;
  double fee_revenue = 0.0;
  double alpha_before = 1.0;
  double alpha_after = 1.0;
  double spot_after = 0.0;
};

/// Closed-form sizes come back flagged when no profitable trade exists.
struct SizeResult {
  double size = 0.0;
  bool profitable = false;
};

/// Relative slack on the alpha > alpha_min gate. A pool that an optimal
/// trade has just moved onto the threshold sits within rounding of it and
/// must not trade again.
inline constexpr double kAlphaGateSlack = 1e-12;

/// p_cex / spot.
double alpha(double p_cex, const PoolState& pool);

/// Profitability threshold: (1 + f_fl) / (1 - f) for the optimal strategy,
/// its square for price matching.
double min_alpha(ArbStrategy strategy, double f, double f_fl = 0.0);

/// Profit-maximizing flashloan, in the input token, for price ratio a and
/// input-side reserve x_in. Equals x_in * sqrt(a_min) * (sqrt(a) - sqrt(a_min))
/// when f_fl = 0; the general form divides by 1 + f_fl.
SizeResult optimal_flashloan(double a, double f, double x_in, double f_fl = 0.0);

/// x_in * (sqrt(a) - sqrt(a_min))^2, or 0 at or below the threshold.
double optimal_profit(double a, double f, double x_in, double f_fl = 0.0);

/// x_in * (sqrt(a) - 1) / (1 - f); not applicable for a <= 1.
SizeResult matching_flashloan(double a, double f, double x_in);

/// Profit of borrowing `flashloan` input tokens, swapping them through the
/// pool and selling the output on the CEX. Written as
///   L * (a g - c - c g L / x_in) / (1 + g L / x_in) - txn,  g = 1 - f, c = 1 + f_fl
/// which avoids the cancellation of the direct difference near the optimum.
double realized_profit(double a, double f, double x_in, double flashloan, double f_fl = 0.0,
                       double txn = 0.0);

struct NumericSize {
  double flashloan = 0.0;
  bool profitable = false;
  ArbDirection direction = ArbDirection::none;
};

/// Golden-section maximization of realized_profit over the flashloan size.
/// Independent of the closed form and used to check it.
NumericSize numeric_optimal_flashloan(const PoolState& pool, double p_cex, const FeeSchedule& fees);

/// One arbitrage attempt at CEX price p_cex. Executes through execute_swap
/// when the strategy's threshold is exceeded and the realized profit is
/// positive; otherwise pool and ledger are left untouched.
ArbOutcome arbitrage_step(PoolState& pool, FeeLedger& ledger, double p_cex, ArbStrategy strategy,
                          const FeeSchedule& fees);

}  // namespace arbsim
