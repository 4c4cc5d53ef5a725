#include "arbsim/stochastic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "arbsim/error.hpp"
#include "arbsim/rng.hpp"

namespace arbsim {
namespace {

std::vector<PricePath> walk_ensemble(WalkParams p, std::size_t runs, std::uint64_t master) {
  std::vector<PricePath> out;
  out.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    p.seed = derive_seed(master, i);
    out.push_back(gen_random_walk(p));
  }
  return out;
}

TEST(RandomWalk, ZeroStepsIsJustTheStart) {
  const auto path = gen_random_walk({1.0, 0.02, 0.5, 0, 1});
  ASSERT_EQ(path.prices.size(), 1u);
  EXPECT_EQ(path.prices[0], 1.0);
}

TEST(RandomWalk, ZeroVolatilityIsConstant) {
  const auto path = gen_random_walk({1.0, 0.0, 0.5, 100, 1});
  ASSERT_EQ(path.prices.size(), 101u);
  for (double p : path.prices) EXPECT_EQ(p, 1.0);
}

TEST(RandomWalk, StepsAreOnTheLattice) {
  const WalkParams params{2.0, 0.01, 0.5, 500, 9};
  const auto path = gen_random_walk(params);
  for (std::size_t i = 1; i < path.prices.size(); ++i) {
    EXPECT_NEAR(std::fabs(path.prices[i] - path.prices[i - 1]), 0.02, 1e-12);
  }
}

TEST(RandomWalk, DeterministicPerSeed) {
  const WalkParams params{1.0, 0.02, 0.5, 1000, 77};
  EXPECT_EQ(gen_random_walk(params).prices, gen_random_walk(params).prices);
  WalkParams other = params;
  other.seed = 78;
  EXPECT_NE(gen_random_walk(params).prices, gen_random_walk(other).prices);
}

TEST(RandomWalk, RejectsBadParameters) {
  EXPECT_THROW(gen_random_walk({0.0, 0.02, 0.5, 10, 1}), ParameterError);
  EXPECT_THROW(gen_random_walk({1.0, -0.1, 0.5, 10, 1}), ParameterError);
  EXPECT_THROW(gen_random_walk({1.0, 0.02, 1.5, 10, 1}), ParameterError);
}

// <(p_n - p0)^2> = p0^2 sigma^2 n for the symmetric walk.
TEST(RandomWalk, VarianceLaw) {
  for (std::uint64_t n : {100u, 1000u}) {
    const auto paths = walk_ensemble({1.0, 0.02, 0.5, n, 0}, 10000, 1234 + n);
    const auto s = path_stats(paths);
    const double expected = 0.02 * 0.02 * static_cast<double>(n);
    EXPECT_NEAR(s.displacement_variance, expected, 3.0 * s.se_displacement_variance) << "n=" << n;
    EXPECT_NEAR(s.mean_displacement, 0.0, 3.0 * s.se_mean_displacement) << "n=" << n;
  }
}

TEST(RandomWalk, VarianceLawAtTenThousandSteps) {
  const auto paths = walk_ensemble({1.0, 0.02, 0.5, 10000, 0}, 10000, 99);
  const auto s = path_stats(paths);
  EXPECT_NEAR(s.displacement_variance, 0.02 * 0.02 * 10000, 3.0 * s.se_displacement_variance);
}

// Asymmetric walk: mean displacement p0 sigma n (2 p_up - 1) = 2.0.
TEST(RandomWalk, AsymmetricMeanDisplacement) {
  const auto paths = walk_ensemble({1.0, 0.01, 0.6, 1000, 0}, 4000, 5);
  const auto s = path_stats(paths);
  EXPECT_NEAR(s.mean_displacement, 2.0, 3.0 * s.se_mean_displacement);
  EXPECT_NEAR(s.mean_per_step, 0.002, 3.0 * s.se_mean_displacement / 1000.0);
}

TEST(PathStats, ConstantPathsHaveZeroVariance) {
  std::vector<PricePath> paths(5, gen_random_walk({1.0, 0.0, 0.5, 20, 1}));
  const auto s = path_stats(paths);
  EXPECT_EQ(s.displacement_variance, 0.0);
  EXPECT_EQ(s.mean_displacement, 0.0);
  EXPECT_EQ(s.n_steps, 20u);
}

TEST(PathStats, RejectsEmptyAndMixedEnsembles) {
  std::vector<PricePath> none;
  EXPECT_THROW(path_stats(none), EmptyInputError);
  std::vector<PricePath> mixed{gen_random_walk({1.0, 0.02, 0.5, 10, 1}),
                               gen_random_walk({1.0, 0.02, 0.5, 11, 1})};
  EXPECT_THROW(path_stats(mixed), ParameterError);
}

TEST(Gbm, ZeroVolatilityNoDriftIsConstant) {
  const auto path = gen_gbm_path({1.0, 0.0, 0.0, 50, 3, IncrementKind::binary});
  for (double p : path.prices) EXPECT_EQ(p, 1.0);
}

TEST(Gbm, BinaryUpdateIsMultiplicative) {
  const GbmParams params{1.0, 0.0001, 0.001, 200, 21, IncrementKind::binary};
  const auto path = gen_gbm_path(params);
  for (std::size_t i = 1; i < path.prices.size(); ++i) {
    const double ratio = path.prices[i] / path.prices[i - 1];
    const bool up = std::fabs(ratio - 1.0011) < 1e-12;
    const bool down = std::fabs(ratio - 0.9991) < 1e-12;
    EXPECT_TRUE(up || down) << ratio;
  }
}

TEST(Gbm, PositivityInBothModes) {
  for (auto kind : {IncrementKind::binary, IncrementKind::gaussian}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto path = gen_gbm_path({1.0, -0.01, 0.3, 500, seed, kind});
      for (double p : path.prices) ASSERT_GT(p, 0.0);
    }
  }
}

TEST(Gbm, BinaryRejectsNonPositiveFactor) {
  EXPECT_THROW(gen_gbm_path({1.0, 0.0, 1.0, 10, 1, IncrementKind::binary}), ParameterError);
  EXPECT_NO_THROW(gen_gbm_path({1.0, 0.0, 1.0, 10, 1, IncrementKind::gaussian}));
}

// E[p_n] = p0 (1 + mu)^n for the binary update.
TEST(Gbm, DriftConsistency) {
  for (double mu : {0.0, 0.0001}) {
    std::vector<PricePath> paths;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      paths.push_back(gen_gbm_path({1.0, mu, 0.001, 1000, derive_seed(8, i), IncrementKind::binary}));
    }
    const auto s = path_stats(paths);
    const double expected = std::pow(1.0 + mu, 1000.0) - 1.0;
    EXPECT_NEAR(s.mean_displacement, expected, 3.0 * s.se_mean_displacement) << "mu=" << mu;
  }
}

TEST(Gbm, GaussianMeanMatchesExpDrift) {
  std::vector<PricePath> paths;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    paths.push_back(gen_gbm_path({1.0, 0.0001, 0.001, 1000, derive_seed(9, i), IncrementKind::gaussian}));
  }
  const auto s = path_stats(paths);
  EXPECT_NEAR(s.mean_displacement, std::exp(0.1) - 1.0, 3.0 * s.se_mean_displacement);
}

}  // namespace
}  // namespace arbsim
