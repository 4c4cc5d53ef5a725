#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "arbsim/rng.hpp"

namespace arbsim {

/// Additive lattice walk p_n = p0 + p0 * sigma * (sum of +-1 steps).
struct WalkParams {
  double p0 = 1.0;
  double sigma = 0.02;
  double p_up = 0.5;
  std::uint64_t n_steps = 0;
  std::uint64_t seed = 0;
};

enum class IncrementKind { binary, gaussian };

/// Multiplicative price process with per-step drift mu and volatility sigma.
///
/// binary:   p' = p * (1 + mu + sigma * xi), xi = +-1 equiprobable
/// gaussian: p' = p * exp(mu - sigma^2 / 2 + sigma * z), z ~ N(0, 1)
struct GbmParams {
  double p0 = 1.0;
  double mu = 0.0;
  double sigma = 0.001;
  std::uint64_t n_steps = 0;
  std::uint64_t seed = 0;
  IncrementKind increments = IncrementKind::binary;
};

void validate(const WalkParams& params);
void validate(const GbmParams& params);

struct PricePath {
  std::vector<double> prices;  // n_steps + 1 entries, prices[0] == p0
  std::variant<WalkParams, GbmParams> params;
};

/// Incremental random walk. The displacement is tracked as an integer step
/// count so the lattice is exact no matter how long the walk runs.
class RandomWalk {
 public:
  explicit RandomWalk(const WalkParams& params);

  double step();
  double price() const { return p0_ + step_size_ * static_cast<double>(offset_); }
  double displacement() const { return step_size_ * static_cast<double>(offset_); }
  std::int64_t offset() const { return offset_; }
  double step_size() const { return step_size_; }

 private:
  double p0_;
  double step_size_;
  double p_up_;
  std::int64_t offset_ = 0;
  Rng rng_;
};

/// Incremental geometric Brownian motion with unit time step.
class GbmProcess {
 public:
  explicit GbmProcess(const GbmParams& params);

  double step();
  double price() const { return price_; }

 private:
  double price_;
  double mu_;
  double sigma_;
  double log_drift_;
  IncrementKind kind_;
  Rng rng_;
};

PricePath gen_random_walk(const WalkParams& params);
PricePath gen_gbm_path(const GbmParams& params);

/// Terminal-displacement statistics over an ensemble of equal-length paths.
struct PathStats {
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  double mean_displacement = 0.0;
  double se_mean_displacement = 0.0;
  double displacement_variance = 0.0;  // unbiased
  double se_displacement_variance = 0.0;
  double mean_per_step = 0.0;
  double variance_per_step = 0.0;
};

/// Throws EmptyInputError on an empty ensemble and ParameterError when the
/// paths differ in length or starting price.
PathStats path_stats(std::span<const PricePath> ensemble);

}  // namespace arbsim
