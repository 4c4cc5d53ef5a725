#include "arbsim/amm.hpp"

#include <cmath>

#include "arbsim/error.hpp"

namespace arbsim {

namespace {

void check_pool(const PoolState& pool) {
  if (!(pool.x_a > 0.0) || !(pool.x_b > 0.0) || !std::isfinite(pool.x_a) ||
      !std::isfinite(pool.x_b)) {
    throw ParameterError("pool: reserves must be positive and finite");
  }
}

void check_amount(double amount) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw ParameterError("swap: input amount must be finite and >= 0");
  }
}

}  // namespace

double PoolState::liquidity() const { return std::sqrt(x_a * x_b); }

void validate(const FeeSchedule& fees) {
  auto swap_fee_ok = [](double f) { return f >= 0.0 && f < 1.0; };
  if (!swap_fee_ok(fees.f_b_to_a) || !swap_fee_ok(fees.f_a_to_b)) {
    throw ParameterError("fees: swap fees must lie in [0, 1)");
  }
  if (!(fees.f_fl >= 0.0) || !std::isfinite(fees.f_fl)) {
    throw ParameterError("fees: flashloan fee must be >= 0");
  }
  if (!(fees.txn >= 0.0) || !std::isfinite(fees.txn)) {
    throw ParameterError("fees: transaction cost must be >= 0");
  }
}

double fee_for(const FeeSchedule& fees, SwapDirection dir) {
  return dir == SwapDirection::b_in_a_out ? fees.f_b_to_a : fees.f_a_to_b;
}

PoolState new_pool(double x_a, double x_b) {
  PoolState pool{x_a, x_b};
  check_pool(pool);
  return pool;
}

double spot_price(const PoolState& pool) {
  check_pool(pool);
  return pool.spot();
}

double quote_b_in(const PoolState& pool, double db_net) {
  check_pool(pool);
  check_amount(db_net);
  return pool.x_a * db_net / (pool.x_b + db_net);
}

double quote_a_in(const PoolState& pool, double da_net) {
  check_pool(pool);
  check_amount(da_net);
  return pool.x_b * da_net / (pool.x_a + da_net);
}

double post_swap_spot(const PoolState& pool, SwapDirection dir, double net_in) {
  check_pool(pool);
  check_amount(net_in);
  if (dir == SwapDirection::a_in_b_out) {
    const double g = 1.0 + net_in / pool.x_a;
    return pool.spot() / (g * g);
  }
  const double g = 1.0 + net_in / pool.x_b;
  return pool.spot() * g * g;
}

SwapReceipt execute_swap(PoolState& pool, FeeLedger& ledger, const FeeSchedule& fees,
                         SwapDirection dir, double amount_in_gross) {
  check_pool(pool);
  check_amount(amount_in_gross);
  validate(fees);

  const bool b_in = dir == SwapDirection::b_in_a_out;
  double& in_reserve = b_in ? pool.x_b : pool.x_a;
  double& out_reserve = b_in ? pool.x_a : pool.x_b;

  SwapReceipt r;
  r.direction = dir;
  r.amount_in_gross = amount_in_gross;
  r.spot_before = out_reserve / in_reserve;
  if (amount_in_gross == 0.0) {
    r.effective_price = r.spot_before;
    r.spot_after = r.spot_before;
    return r;
  }

  const double f = fee_for(fees, dir);
  r.fee_taken = amount_in_gross * f;
  r.amount_in_net = amount_in_gross * (1.0 - f);
  r.amount_out = out_reserve * r.amount_in_net / (in_reserve + r.amount_in_net);
  r.effective_price = r.amount_out / r.amount_in_net;

  in_reserve += r.amount_in_net;
  out_reserve -= r.amount_out;
  (b_in ? ledger.accrued_b : ledger.accrued_a) += r.fee_taken;
  r.spot_after = out_reserve / in_reserve;
  return r;
}

}  // namespace arbsim
