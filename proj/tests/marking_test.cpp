#include <gtest/gtest.h>

#include "curvy/aqm/marking.hpp"

using namespace curvy::aqm;

TEST(Decide, ZeroProbabilityAlwaysForwards) {
  curvy::Pcg32 rng(1, 0);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(decide(Probability{0.0}, MarkingMode::Drop, true, rng), Decision::Forward);
}

TEST(Decide, UnitProbabilityAlwaysSignals) {
  curvy::Pcg32 rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_EQ(decide(Probability{1.0}, MarkingMode::Drop, true, rng), Decision::Drop);
    ASSERT_EQ(decide(Probability{1.0}, MarkingMode::ClassicEcnMark, true, rng), Decision::Mark);
    ASSERT_EQ(decide(Probability{1.0}, MarkingMode::ClassicEcnMark, false, rng), Decision::Drop);
  }
}

TEST(Decide, EmpiricalRateMatchesProbability) {
  curvy::Pcg32 rng(2024, 0);
  int hits = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) hits += decide(Probability{0.3}, MarkingMode::Drop, false, rng) != Decision::Forward;
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.3, 0.002);
}

TEST(Decide, ModesShareTheDecisionStream) {
  curvy::Pcg32 a(9, 0), b(9, 0);
  for (int i = 0; i < 100000; ++i) {
    const Probability p{(i % 97) / 96.0};
    const auto da = decide(p, MarkingMode::Drop, true, a);
    const auto db = decide(p, MarkingMode::ClassicEcnMark, true, b);
    ASSERT_EQ(da == Decision::Forward, db == Decision::Forward);
    if (da != Decision::Forward) {
      ASSERT_EQ(da, Decision::Drop);
      ASSERT_EQ(db, Decision::Mark);
    }
  }
}
