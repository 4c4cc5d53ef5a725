#pragma once

#include <cmath>
#include <cstddef>

namespace arbsim {

struct GoldenResult {
  double argmax = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Golden-section maximization of a unimodal function on [lo, hi].
///
/// Stops once the bracket is narrower than rel_tol * max(|argmax|, abs_floor)
/// or after max_iter reductions. Only one new evaluation per iteration.
template <typename F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double rel_tol = 1e-10,
                                     std::size_t max_iter = 200, double abs_floor = 1e-300) {
  constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::fmax(std::fabs(mid), abs_floor)) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  GoldenResult r;
  r.iterations = it;
  if (fc >= fd) {
    r.argmax = c;
    r.value = fc;
  } else {
    r.argmax = d;
    r.value = fd;
  }
  return r;
}

}  // namespace arbsim
