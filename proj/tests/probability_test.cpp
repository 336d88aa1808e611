#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "curvy/aqm/probability.hpp"
#include "curvy/random.hpp"

using curvy::aqm::clamp01;
using curvy::aqm::Probability;

TEST(Probability, AcceptsUnitInterval) {
  EXPECT_EQ(Probability{0.0}.value(), 0.0);
  EXPECT_EQ(Probability{1.0}.value(), 1.0);
  EXPECT_EQ(Probability{0.3}.value(), 0.3);
}

TEST(Probability, RejectsOutOfRange) {
  EXPECT_THROW(Probability{-1e-12}, std::domain_error);
  EXPECT_THROW(Probability{1.0000001}, std::domain_error);
  EXPECT_THROW(Probability{std::nan("")}, std::domain_error);
}

TEST(Probability, ClampSaturatesAndSwallowsNan) {
  EXPECT_EQ(clamp01(-3.0), 0.0);
  EXPECT_EQ(clamp01(7.0), 1.0);
  EXPECT_EQ(clamp01(std::numeric_limits<double>::quiet_NaN()), 0.0);
  EXPECT_EQ(clamp01(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_EQ(Probability::from_clamped(0.25).value(), 0.25);
}

TEST(Pcg32, StreamsAreReproducibleAndDistinct) {
  curvy::Pcg32 a(42, 0), b(42, 0), c(42, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs = differs || x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(Pcg32, UniformInHalfOpenUnitInterval) {
  curvy::Pcg32 rng(1, 3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}
