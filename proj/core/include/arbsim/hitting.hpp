#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arbsim/stochastic.hpp"

namespace arbsim {

/// Price offsets relative to p0 at which a walk is stopped.
struct ThresholdSpec {
  std::optional<double> upper;  // stop once p_n >= p0 + upper
  std::optional<double> lower;  // stop once p_n <= p0 - lower
  std::uint64_t max_steps = 1'000'000;
};

void validate(const ThresholdSpec& spec);

/// Aggregate of first-passage times. Censored runs are counted but never
/// enter mean_steps or std_error.
struct HittingEstimate {
  double mean_steps = 0.0;
  double std_error = 0.0;
  std::uint64_t n_runs = 0;
  std::uint64_t censored_count = 0;

  std::uint64_t uncensored() const { return n_runs - censored_count; }
  double censored_fraction() const {
    return n_runs == 0 ? 0.0 : static_cast<double>(censored_count) / static_cast<double>(n_runs);
  }
  /// False when every run was censored: the mean is then undefined.
  bool usable() const { return uncensored() > 0; }
};

/// Smallest n with the walk at or beyond a threshold, or nullopt if neither
/// is reached within spec.max_steps. Uses walk.seed; walk.n_steps is ignored.
/// A zero-volatility walk with positive thresholds is censored immediately.
std::optional<std::uint64_t> first_hit(const WalkParams& walk, const ThresholdSpec& spec);

/// Runs first_hit over n_runs paths seeded with derive_seed(walk.seed, i).
HittingEstimate estimate_hitting_time(const WalkParams& walk, const ThresholdSpec& spec,
                                      std::uint64_t n_runs, unsigned threads = 0);

enum class ThresholdMode {
  symmetric,    // upper = lower = delta_p
  upper_only,   // upper = delta_p, no lower threshold
  fixed_lower,  // upper = delta_p, lower held at the template's value
  fixed_upper,  // lower = delta_p, upper held at the template's value
};

struct SweepPoint {
  double delta_p = 0.0;
  HittingEstimate estimate;
};

/// One estimate per grid point; point k uses master seed
/// derive_seed(walk.seed, k). The grid must be strictly increasing with at
/// least four positive points.
std::vector<SweepPoint> sweep_thresholds(const WalkParams& walk, const ThresholdSpec& templ,
                                         ThresholdMode mode, std::span<const double> grid,
                                         std::uint64_t n_runs, unsigned threads = 0);

/// Least-squares line through (log x, log y).
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;  // y ~ amplitude * x^exponent
  double r_squared = 0.0;
};

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Fits mean_steps against delta_p over the usable rows of a sweep.
PowerLawFit fit_power_law(std::span<const SweepPoint> table);

}  // namespace arbsim
