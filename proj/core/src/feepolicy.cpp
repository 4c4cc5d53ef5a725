#include "arbsim/feepolicy.hpp"

#include <algorithm>
#include <type_traits>
#include <cmath>

#include "arbsim/arbitrage.hpp"
#include "arbsim/error.hpp"
#include "arbsim/golden.hpp"

namespace arbsim {

double optimal_fee_approx(double a) {
  if (!(a >= 1.0)) throw ParameterError("optimal_fee_approx: alpha must be >= 1");
  return std::sqrt(a) - 1.0;
}

double fee_revenue(double a, double f, double x_in) {
  return optimal_flashloan(a, f, x_in).size * f;
}

double optimal_fee_exact(double a, double x_in) {
  if (!(a > 1.0)) throw ParameterError("optimal_fee_exact: alpha must be > 1");
  if (!(x_in > 0.0)) throw ParameterError("optimal_fee_exact: reserve must be positive");
  // Fees at or above 1 - 1/a suppress the trade entirely.
  const double f_max = 1.0 - 1.0 / a;
  if (!(f_max > 0.0)) return 0.0;
  const auto best = golden_section_maximize(
      [&](double f) { return fee_revenue(a, f, x_in); }, 0.0, f_max, 1e-10, 200);
  return best.argmax;
}

RevenueSplit revenue_split(double a, double f, double x_in) {
  RevenueSplit s;
  const SizeResult size = optimal_flashloan(a, f, x_in);
  if (!size.profitable) return s;
  s.amm_revenue = size.size * f;
  s.arb_profit = optimal_profit(a, f, x_in);
  if (!(s.arb_profit > 0.0)) return s;
  s.ratio = s.amm_revenue / s.arb_profit;
  s.retained = s.amm_revenue / (s.amm_revenue + s.arb_profit);
  s.defined = true;
  return s;
}

namespace {

bool fee_ok(double f) { return f >= 0.0 && f < 1.0; }

DirectionalFees adaptive_fees(const DirectionalAdaptive& p, double ewma) {
  const double shift = p.drift_gain * ewma;
  return {std::clamp(p.base_fee + shift, p.min_fee, p.max_fee),
          std::clamp(p.base_fee - shift, p.min_fee, p.max_fee)};
}

}  // namespace

void validate(const FeePolicy& policy) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticSymmetric>) {
          if (!fee_ok(p.fee)) throw ParameterError("policy: fee must lie in [0, 1)");
        } else if constexpr (std::is_same_v<T, StaticAsymmetric>) {
          if (!fee_ok(p.f_b_to_a) || !fee_ok(p.f_a_to_b)) {
            throw ParameterError("policy: fees must lie in [0, 1)");
          }
        } else {
          if (!fee_ok(p.base_fee) || !fee_ok(p.min_fee) || !fee_ok(p.max_fee)) {
            throw ParameterError("policy: adaptive fees must lie in [0, 1)");
          }
          if (p.min_fee > p.max_fee) throw ParameterError("policy: min_fee exceeds max_fee");
          if (!(p.halflife > 0.0)) throw ParameterError("policy: halflife must be positive");
          if (!std::isfinite(p.drift_gain)) throw ParameterError("policy: drift_gain must be finite");
        }
      },
      policy);
}

PolicyState initial_state(const FeePolicy& policy) {
  PolicyState s;
  s.last_fees = policy_fees(policy, s);
  return s;
}

DirectionalFees policy_fees(const FeePolicy& policy, const PolicyState& state) {
  return std::visit(
      [&](const auto& p) -> DirectionalFees {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticSymmetric>) {
          return {p.fee, p.fee};
        } else if constexpr (std::is_same_v<T, StaticAsymmetric>) {
          return {p.f_b_to_a, p.f_a_to_b};
        } else {
          return adaptive_fees(p, state.ewma_return);
        }
      },
      policy);
}

PolicyState policy_update(const FeePolicy& policy, const PolicyState& state,
                          double observed_return) {
  if (!std::isfinite(observed_return)) throw ParameterError("policy_update: return must be finite");
  PolicyState next = state;
  if (const auto* p = std::get_if<DirectionalAdaptive>(&policy)) {
    const double decay = std::exp2(-1.0 / p->halflife);
    next.ewma_return = decay * state.ewma_return + (1.0 - decay) * observed_return;
  }
  next.last_fees = policy_fees(policy, next);
  return next;
}

FeeSchedule to_schedule(const DirectionalFees& fees, double f_fl, double txn) {
  return {fees.f_b_to_a, fees.f_a_to_b, f_fl, txn};
}

}  // namespace arbsim
