#include "arbsim/arbitrage.hpp"

#include <cmath>

#include "arbsim/error.hpp"
#include "arbsim/golden.hpp"

namespace arbsim {

namespace {

void check_fee(double f) {
  if (!(f >= 0.0 && f < 1.0)) throw ParameterError("fee must lie in [0, 1)");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(what);
}

bool above_threshold(double a, double a_min) { return a > a_min * (1.0 + kAlphaGateSlack); }

// Everything below is written for the "up" case: borrow the input token,
// swap it into the pool for the output token, sell the output on the CEX at
// `price` input-per-output. The down case reuses it with the roles of A and
// B exchanged.
struct Leg {
  ArbDirection direction;
  SwapDirection swap;
  double x_in;
  double x_out;
  double price;  // CEX price of the output token in input-token units
  double fee;
  double txn;  // in input-token units
};

Leg up_leg(const PoolState& pool, double p_cex, const FeeSchedule& fees) {
  return {ArbDirection::b_in_a_out, SwapDirection::b_in_a_out, pool.x_b, pool.x_a, p_cex,
          fees.f_b_to_a, fees.txn};
}

Leg down_leg(const PoolState& pool, double p_cex, const FeeSchedule& fees) {
  const double price = 1.0 / p_cex;
  return {ArbDirection::a_in_b_out, SwapDirection::a_in_b_out, pool.x_a, pool.x_b, price,
          fees.f_a_to_b, fees.txn * price};
}

double leg_alpha(const Leg& leg) { return leg.price / (leg.x_in / leg.x_out); }

}  // namespace

double alpha(double p_cex, const PoolState& pool) {
  check_positive(p_cex, "alpha: p_cex must be positive");
  return p_cex / spot_price(pool);
}

double min_alpha(ArbStrategy strategy, double f, double f_fl) {
  check_fee(f);
  if (!(f_fl >= 0.0)) throw ParameterError("flashloan fee must be >= 0");
  const double a_min = (1.0 + f_fl) / (1.0 - f);
  return strategy == ArbStrategy::optimal ? a_min : a_min * a_min;
}

SizeResult optimal_flashloan(double a, double f, double x_in, double f_fl) {
  check_positive(x_in, "optimal_flashloan: reserve must be positive");
  const double a_min = min_alpha(ArbStrategy::optimal, f, f_fl);
  if (!(a > a_min)) return {};
  const double root_min = std::sqrt(a_min);
  return {x_in * root_min * (std::sqrt(a) - root_min) / (1.0 + f_fl), true};
}

double optimal_profit(double a, double f, double x_in, double f_fl) {
  check_positive(x_in, "optimal_profit: reserve must be positive");
  const double a_min = min_alpha(ArbStrategy::optimal, f, f_fl);
  if (!(a > a_min)) return 0.0;
  const double gap = std::sqrt(a) - std::sqrt(a_min);
  return x_in * gap * gap;
}

SizeResult matching_flashloan(double a, double f, double x_in) {
  check_fee(f);
  check_positive(x_in, "matching_flashloan: reserve must be positive");
  if (!(a > 1.0)) return {};
  return {x_in * (std::sqrt(a) - 1.0) / (1.0 - f), true};
}

double realized_profit(double a, double f, double x_in, double flashloan, double f_fl,
                       double txn) {
  const double g = 1.0 - f;
  const double c = 1.0 + f_fl;
  const double u = g * flashloan / x_in;
  return flashloan * ((a * g - c) - c * u) / (1.0 + u) - txn;
}

NumericSize numeric_optimal_flashloan(const PoolState& pool, double p_cex,
                                      const FeeSchedule& fees) {
  check_positive(p_cex, "numeric_optimal_flashloan: p_cex must be positive");
  validate(fees);
  const double a_up = alpha(p_cex, pool);
  if (a_up == 1.0) return {};
  const Leg leg = a_up > 1.0 ? up_leg(pool, p_cex, fees) : down_leg(pool, p_cex, fees);
  const double a = leg_alpha(leg);
  const double g = 1.0 - leg.fee;

  auto profit = [&](double size) {
    return realized_profit(a, leg.fee, leg.x_in, size, fees.f_fl, leg.txn);
  };
  // The profit is concave in the size and peaks below x_in * sqrt(a) / g.
  const double hi = leg.x_in * std::sqrt(a) / g;
  const GoldenResult best = golden_section_maximize(profit, 0.0, hi, 1e-10, 200);
  if (!(best.value > 0.0)) return {0.0, false, leg.direction};
  return {best.argmax, true, leg.direction};
}

ArbOutcome arbitrage_step(PoolState& pool, FeeLedger& ledger, double p_cex, ArbStrategy strategy,
                          const FeeSchedule& fees) {
  check_positive(p_cex, "arbitrage_step: p_cex must be positive");
  validate(fees);

  ArbOutcome out;
  out.alpha_before = alpha(p_cex, pool);
  out.alpha_after = out.alpha_before;
  out.spot_after = pool.spot();
  if (out.alpha_before == 1.0) return out;

  const Leg leg = out.alpha_before > 1.0 ? up_leg(pool, p_cex, fees) : down_leg(pool, p_cex, fees);
  const double a = leg_alpha(leg);
  if (!above_threshold(a, min_alpha(strategy, leg.fee, fees.f_fl))) return out;

  const SizeResult size = strategy == ArbStrategy::optimal
                              ? optimal_flashloan(a, leg.fee, leg.x_in, fees.f_fl)
                              : matching_flashloan(a, leg.fee, leg.x_in);
  if (!size.profitable || !(size.size > 0.0)) return out;

  PoolState trial = pool;
  FeeLedger trial_ledger = ledger;
  const SwapReceipt receipt = execute_swap(trial, trial_ledger, fees, leg.swap, size.size);
  const double profit =
      leg.price * receipt.amount_out - size.size * (1.0 + fees.f_fl) - leg.txn;
  if (!(profit > 0.0)) return out;

  pool = trial;
  ledger = trial_ledger;
  out.executed = true;
  out.direction = leg.direction;
  out.flashloan = size.size;
  out.arb_profit = profit;
  out.fee_token = leg.swap == SwapDirection::b_in_a_out ? Token::b : Token::a;
  out.fee_revenue = receipt.fee_taken;
  out.spot_after = pool.spot();
  out.alpha_after = p_cex / out.spot_after;
  return out;
}

}  // namespace arbsim
