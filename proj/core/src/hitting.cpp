#include "arbsim/hitting.hpp"

#include <cmath>

#include "arbsim/error.hpp"
#include "arbsim/parallel.hpp"
#include "arbsim/rng.hpp"

namespace arbsim {

namespace {

// Threshold attainment is decided on the lattice offset, with a relative
// slack that absorbs the rounding in p0 * sigma * k.
constexpr double kLatticeSlack = 1e-9;

std::int64_t steps_to_reach(double offset, double step_size) {
  return static_cast<std::int64_t>(std::ceil(offset / step_size - kLatticeSlack));
}

}  // namespace

void validate(const ThresholdSpec& spec) {
  if (!spec.upper && !spec.lower) throw ParameterError("threshold: at least one side required");
  if (spec.upper && !(*spec.upper >= 0.0)) throw ParameterError("threshold: upper must be >= 0");
  if (spec.lower && !(*spec.lower >= 0.0)) throw ParameterError("threshold: lower must be >= 0");
  if (spec.max_steps < 1) throw ParameterError("threshold: max_steps must be >= 1");
}

std::optional<std::uint64_t> first_hit(const WalkParams& walk, const ThresholdSpec& spec) {
  validate(walk);
  validate(spec);
  if ((spec.upper && *spec.upper == 0.0) || (spec.lower && *spec.lower == 0.0)) return 0;
  if (walk.sigma == 0.0) return std::nullopt;

  RandomWalk rw(walk);
  const double step = rw.step_size();
  // Offsets in lattice units; an absent side can never be reached.
  const std::int64_t up = spec.upper ? steps_to_reach(*spec.upper, step) : INT64_MAX;
  const std::int64_t down = spec.lower ? -steps_to_reach(*spec.lower, step) : INT64_MIN;
  for (std::uint64_t n = 1; n <= spec.max_steps; ++n) {
    rw.step();
    const std::int64_t k = rw.offset();
    if (k >= up || k <= down) return n;
  }
  return std::nullopt;
}

HittingEstimate estimate_hitting_time(const WalkParams& walk, const ThresholdSpec& spec,
                                      std::uint64_t n_runs, unsigned threads) {
  if (n_runs < 1) throw ParameterError("estimate_hitting_time: n_runs must be >= 1");
  validate(walk);
  validate(spec);

  const auto hits = parallel_map(n_runs, threads, [&](std::size_t i) {
    WalkParams run = walk;
    run.seed = derive_seed(walk.seed, i);
    return first_hit(run, spec);
  });

  HittingEstimate est;
  est.n_runs = n_runs;
  double sum = 0.0;
  std::uint64_t count = 0;
  for (const auto& h : hits) {
    if (!h) {
      ++est.censored_count;
      continue;
    }
    sum += static_cast<double>(*h);
    ++count;
  }
  if (count == 0) return est;
  est.mean_steps = sum / static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (const auto& h : hits) {
      if (!h) continue;
      const double d = static_cast<double>(*h) - est.mean_steps;
      ss += d * d;
    }
    const double var = ss / static_cast<double>(count - 1);
    est.std_error = std::sqrt(var / static_cast<double>(count));
  }
  return est;
}

std::vector<SweepPoint> sweep_thresholds(const WalkParams& walk, const ThresholdSpec& templ,
                                         ThresholdMode mode, std::span<const double> grid,
                                         std::uint64_t n_runs, unsigned threads) {
  if (grid.size() < 4) throw ParameterError("sweep_thresholds: grid needs at least 4 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ParameterError("sweep_thresholds: grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ParameterError("sweep_thresholds: grid must be strictly increasing");
    }
  }

  std::vector<SweepPoint> table;
  table.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ThresholdSpec spec = templ;
    switch (mode) {
      case ThresholdMode::symmetric:
        spec.upper = grid[k];
        spec.lower = grid[k];
        break;
      case ThresholdMode::upper_only:
        spec.upper = grid[k];
        spec.lower.reset();
        break;
      case ThresholdMode::fixed_lower:
        if (!templ.lower) throw ParameterError("sweep_thresholds: fixed_lower needs a lower threshold");
        spec.upper = grid[k];
        break;
      case ThresholdMode::fixed_upper:
        if (!templ.upper) throw ParameterError("sweep_thresholds: fixed_upper needs an upper threshold");
        spec.lower = grid[k];
        break;
    }
    WalkParams point = walk;
    point.seed = derive_seed(walk.seed, k);
    table.push_back({grid[k], estimate_hitting_time(point, spec, n_runs, threads)});
  }
  return table;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("fit_power_law: x and y differ in length");
  if (x.size() < 4) throw ParameterError("fit_power_law: at least 4 points required");
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ParameterError("fit_power_law: values must be positive and finite");
    }
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ParameterError("fit_power_law: x values are all equal");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  // A perfectly flat y is fit exactly by slope zero.
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

PowerLawFit fit_power_law(std::span<const SweepPoint> table) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : table) {
    if (!row.estimate.usable()) continue;
    x.push_back(row.delta_p);
    y.push_back(row.estimate.mean_steps);
  }
  return fit_power_law(x, y);
}

}  // namespace arbsim
