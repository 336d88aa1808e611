#include <gtest/gtest.h>

#include "codel_reference.hpp"
#include "curvy/aqm/codel.hpp"

using namespace curvy::aqm;

namespace {

CodelSoftState make(double base, double span) {
  CodelSoftState s;
  s.base_target = base;
  s.span = span;
  s.window = 1.0;
  s.interval = 0.1;
  return s;
}

}  // namespace

TEST(CodelSoftTarget, Examples) {
  auto s = make(0.005, 0.095);
  s.drops_in_window = 0;
  s.packets_in_window = 1000;
  EXPECT_EQ(codel_soft_target(s), 0.005);

  s.drops_in_window = s.packets_in_window = 321;
  EXPECT_DOUBLE_EQ(codel_soft_target(s), 0.100);

  // 0.005 + 0.095 * 50 / 1000
  s.drops_in_window = 50;
  s.packets_in_window = 1000;
  EXPECT_NEAR(codel_soft_target(s), 0.00975, 1e-15);
}

TEST(CodelSoftTarget, EmptyWindowIsBase) {
  const auto s = make(0.005, 0.095);
  EXPECT_EQ(codel_soft_target(s), 0.005);
}

TEST(CodelStep, QuiescentBelowTarget) {
  auto s = make(0.005, 0.095);
  for (int i = 0; i < 1000; ++i) {
    auto step = codel_step(std::move(s), 0.002, i * 0.001);
    s = std::move(step.state);
    ASSERT_FALSE(step.drop);
  }
  EXPECT_FALSE(s.dropping);
  EXPECT_EQ(s.drops_in_window, 0u);
}

TEST(CodelStep, PersistentDelayEntersDropping) {
  auto s = make(0.005, 0.0);
  double first_drop = -1.0;
  for (int i = 0; i < 400; ++i) {
    const double now = i * 0.001;
    auto step = codel_step(std::move(s), 0.020, now);
    s = std::move(step.state);
    if (step.drop && first_drop < 0) first_drop = now;
  }
  // armed at the first packet, allowed to drop one interval later
  EXPECT_NEAR(first_drop, 0.100, 1e-9);
  EXPECT_TRUE(s.dropping);
  EXPECT_GE(s.count, 2u);
}

TEST(CodelStep, WindowCountsStayConsistent) {
  auto s = make(0.005, 0.095);
  curvy::Pcg32 rng(3, 0);
  for (int i = 0; i < 20000; ++i) {
    const double now = i * 0.0005;
    auto step = codel_step(std::move(s), 0.03 * rng.uniform(), now);
    s = std::move(step.state);
    ASSERT_LE(s.drops_in_window, s.packets_in_window);
    ASSERT_EQ(s.packets_in_window, s.history.size());
    ASSERT_GE(step.target, s.base_target);
    ASSERT_LE(step.target, s.base_target + s.span);
    ASSERT_GE(s.history.front().first, now - s.window);
  }
}

TEST(CodelStep, ExpireDropsOldEntries) {
  auto s = make(0.005, 0.095);
  for (int i = 0; i < 10; ++i) s = codel_step(std::move(s), 0.0, i * 0.1).state;
  codel_expire(s, 5.0);
  EXPECT_EQ(s.packets_in_window, 0u);
  EXPECT_EQ(codel_soft_target(s), 0.005);
}

TEST(CodelStep, HigherDropRateRaisesTarget) {
  auto s = make(0.005, 0.095);
  for (int i = 0; i < 3000; ++i) s = codel_step(std::move(s), 0.05, i * 0.0002).state;
  EXPECT_GT(codel_drop_estimate(s), 0.0);
  EXPECT_GT(codel_soft_target(s), 0.005);
}

TEST(CodelStep, ZeroSpanMatchesReferenceCodel) {
  const double service = 0.001;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto arrivals = curvy::test::codel_replay_arrivals(20000, seed, service);
    const auto ref = curvy::test::replay_reference(arrivals, service, 0.005, 0.1);
    const auto soft = curvy::test::replay_soft(arrivals, service, make(0.005, 0.0));
    std::size_t drops = 0;
    for (bool d : ref) drops += d;
    EXPECT_GT(drops, 10u) << "replay must exercise the dropping state";
    ASSERT_EQ(ref, soft) << "seed " << seed;
  }
}

TEST(CodelStep, PositiveSpanDropsLess) {
  const double service = 0.001;
  const auto arrivals = curvy::test::codel_replay_arrivals(20000, 4, service);
  const auto fixed = curvy::test::replay_soft(arrivals, service, make(0.005, 0.0));
  const auto soft = curvy::test::replay_soft(arrivals, service, make(0.005, 0.5));
  std::size_t nf = 0, ns = 0;
  for (bool d : fixed) nf += d;
  for (bool d : soft) ns += d;
  EXPECT_LE(ns, nf);
}

TEST(CodelState, ValidateRejectsNegativeSpan) {
  auto s = make(0.005, -0.1);
  EXPECT_THROW(s.validate(), std::invalid_argument);
}
