#include "arbsim/stochastic.hpp"

#include <cmath>
#include <string>

#include "arbsim/error.hpp"

namespace arbsim {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ParameterError(msg);
}

}  // namespace

void validate(const WalkParams& params) {
  require(std::isfinite(params.p0) && params.p0 > 0.0, "walk: p0 must be positive");
  require(std::isfinite(params.sigma) && params.sigma >= 0.0, "walk: sigma must be >= 0");
  require(params.p_up >= 0.0 && params.p_up <= 1.0, "walk: p_up must lie in [0, 1]");
}

void validate(const GbmParams& params) {
  require(std::isfinite(params.p0) && params.p0 > 0.0, "gbm: p0 must be positive");
  require(std::isfinite(params.sigma) && params.sigma >= 0.0, "gbm: sigma must be >= 0");
  require(std::isfinite(params.mu), "gbm: mu must be finite");
  if (params.increments == IncrementKind::binary) {
    require(1.0 + params.mu - params.sigma > 0.0,
            "gbm: binary increments need 1 + mu - sigma > 0 to keep prices positive");
  }
}

RandomWalk::RandomWalk(const WalkParams& params)
    : p0_(params.p0),
      step_size_(params.p0 * params.sigma),
      p_up_(params.p_up),
      rng_(params.seed) {
  validate(params);
}

double RandomWalk::step() {
  offset_ += rng_.sign(p_up_);
  return price();
}

GbmProcess::GbmProcess(const GbmParams& params)
    : price_(params.p0),
      mu_(params.mu),
      sigma_(params.sigma),
      log_drift_(params.mu - 0.5 * params.sigma * params.sigma),
      kind_(params.increments),
      rng_(params.seed) {
  validate(params);
}

double GbmProcess::step() {
  if (kind_ == IncrementKind::binary) {
    const double xi = rng_.bernoulli(0.5) ? 1.0 : -1.0;
    price_ *= 1.0 + mu_ + sigma_ * xi;
  } else {
    price_ *= std::exp(log_drift_ + sigma_ * rng_.normal());
  }
  return price_;
}

PricePath gen_random_walk(const WalkParams& params) {
  RandomWalk walk(params);
  PricePath path{{}, params};
  path.prices.reserve(params.n_steps + 1);
  path.prices.push_back(walk.price());
  for (std::uint64_t i = 0; i < params.n_steps; ++i) path.prices.push_back(walk.step());
  return path;
}

PricePath gen_gbm_path(const GbmParams& params) {
  GbmProcess gbm(params);
  PricePath path{{}, params};
  path.prices.reserve(params.n_steps + 1);
  path.prices.push_back(gbm.price());
  for (std::uint64_t i = 0; i < params.n_steps; ++i) path.prices.push_back(gbm.step());
  return path;
}

PathStats path_stats(std::span<const PricePath> ensemble) {
  if (ensemble.empty()) throw EmptyInputError("path_stats: empty ensemble");
  const std::size_t len = ensemble.front().prices.size();
  if (len == 0) throw EmptyInputError("path_stats: paths hold no prices");
  const double p0 = ensemble.front().prices.front();
  for (const auto& path : ensemble) {
    if (path.prices.size() != len || path.prices.front() != p0) {
      throw ParameterError("path_stats: ensemble paths must share length and p0");
    }
  }

  // Two passes: mean first, then central moments.
  const double n = static_cast<double>(ensemble.size());
  double sum = 0.0;
  for (const auto& path : ensemble) sum += path.prices.back() - p0;
  const double mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (const auto& path : ensemble) {
    const double d = path.prices.back() - p0 - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }

  PathStats s;
  s.n_paths = ensemble.size();
  s.n_steps = len - 1;
  s.mean_displacement = mean;
  if (ensemble.size() > 1) {
    s.displacement_variance = m2 / (n - 1.0);
    s.se_mean_displacement = std::sqrt(s.displacement_variance / n);
    // Large-sample standard error of the variance: sqrt((mu4 - s^4) / n).
    const double mu4 = m4 / n;
    const double var_pop = m2 / n;
    s.se_displacement_variance = std::sqrt(std::fmax(mu4 - var_pop * var_pop, 0.0) / n);
  }
  if (s.n_steps > 0) {
    const double steps = static_cast<double>(s.n_steps);
    s.mean_per_step = s.mean_displacement / steps;
    s.variance_per_step = s.displacement_variance / steps;
  }
  return s;
}

}  // namespace arbsim
