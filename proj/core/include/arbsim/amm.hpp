#pragma once

namespace arbsim {

/// Constant-product pool holding x_a * x_b = L^2. Fees are kept outside the
/// reserves (see FeeLedger), so swaps conserve L exactly up to rounding.
struct PoolState {
  double x_a = 1.0;
  double x_b = 1.0;

  double liquidity() const;
  /// Token B per token A.
  double spot() const { return x_b / x_a; }
};

/// Per-direction swap fees plus flashloan fee and fixed transaction cost.
/// txn is denominated in token B.
struct FeeSchedule {
  double f_b_to_a = 0.0;  // fee on swaps paying B into the pool
  double f_a_to_b = 0.0;  // fee on swaps paying A into the pool
  double f_fl = 0.0;
  double txn = 0.0;

  static FeeSchedule symmetric(double f, double f_fl = 0.0, double txn = 0.0) {
    return {f, f, f_fl, txn};
  }
};

void validate(const FeeSchedule& fees);

struct FeeLedger {
  double accrued_a = 0.0;
  double accrued_b = 0.0;
};

enum class SwapDirection {
  b_in_a_out,
  a_in_b_out,
};

/// Fee rate charged on the input side of a swap in the given direction.
double fee_for(const FeeSchedule& fees, SwapDirection dir);

/// Accounting for one executed swap. The three prices are quoted as output
/// token per input token, so spot_before > effective_price > spot_after for
/// any positive trade in either direction.
struct SwapReceipt {
  SwapDirection direction = SwapDirection::b_in_a_out;
  double amount_in_gross = 0.0;
  double fee_taken = 0.0;
  double amount_in_net = 0.0;
  double amount_out = 0.0;
  double spot_before = 0.0;
  double effective_price = 0.0;
  double spot_after = 0.0;
};

PoolState new_pool(double x_a, double x_b);

double spot_price(const PoolState& pool);

/// A received for net B paid in: x_a * db / (x_b + db).
double quote_b_in(const PoolState& pool, double db_net);
/// B received for net A paid in: x_b * da / (x_a + da).
double quote_a_in(const PoolState& pool, double da_net);

/// Spot price (B per A) the pool would show after a net input of net_in.
double post_swap_spot(const PoolState& pool, SwapDirection dir, double net_in);

/// Takes the direction's fee from amount_in_gross into the ledger, swaps
/// the remainder through the pool and updates reserves. On error nothing is
/// modified.
SwapReceipt execute_swap(PoolState& pool, FeeLedger& ledger, const FeeSchedule& fees,
                         SwapDirection dir, double amount_in_gross);

}  // namespace arbsim
