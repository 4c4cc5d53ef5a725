#include "arbsim/golden.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace arbsim {
namespace {

TEST(GoldenSection, FindsParabolaPeak) {
  const auto r = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(r.argmax, 0.3, 1e-7);
  EXPECT_LE(r.iterations, 200u);
}

TEST(GoldenSection, MonotoneFunctionGoesToEdge) {
  const auto r = golden_section_maximize([](double x) { return x; }, 0.0, 2.0);
  EXPECT_NEAR(r.argmax, 2.0, 1e-8);
}

TEST(GoldenSection, IterationCapIsHonored) {
  const auto r = golden_section_maximize([](double x) { return std::sin(x); }, 0.0, 3.0, 0.0, 10);
  EXPECT_EQ(r.iterations, 10u);
}

}  // namespace
}  // namespace arbsim
