#include <gtest/gtest.h>

#include <cmath>

#include "curvy/metrics/csv.hpp"
#include "curvy/metrics/summary.hpp"
#include "curvy/sim/simulator.hpp"

using namespace curvy;

namespace {

ScenarioConfig base(Controller c, std::uint32_t n, double duration = 20.0) {
  ScenarioConfig cfg;
  cfg.controller = c;
  cfg.n_flows = n;
  cfg.duration = duration;
  cfg.warmup = 5.0;
  cfg.link_rate = 20e6;
  cfg.rtt_base = 0.05;
  return cfg;
}

void expect_conserved(const metrics::TraceSet& t) {
  EXPECT_TRUE(t.total.conserved());
  metrics::PacketCounts sum;
  for (const auto& f : t.per_flow) {
    EXPECT_TRUE(f.conserved());
    sum.generated += f.generated;
    sum.delivered += f.delivered;
    sum.dropped += f.dropped;
    sum.queued += f.queued;
  }
  EXPECT_EQ(sum.generated, t.total.generated);
  EXPECT_EQ(sum.delivered, t.total.delivered);
  EXPECT_EQ(sum.dropped, t.total.dropped);
  EXPECT_EQ(sum.queued, t.total.queued);
}

}  // namespace

TEST(Simulation, ZeroFlowsStaysIdle) {
  auto cfg = base(Controller::CurvyPi2, 0, 5.0);
  const auto t = sim::run(cfg, 1);
  ASSERT_FALSE(t.records.empty());
  for (const auto& r : t.records) {
    EXPECT_EQ(r.queue_delay, 0.0);
    EXPECT_EQ(r.p_prime, 0.0);
    EXPECT_EQ(r.drops_cum, 0u);
  }
  EXPECT_EQ(t.total.generated, 0u);
}

TEST(Simulation, IdleQueueDecaysProbabilityToZero) {
  // p' can only fall when the delay stays under target
  auto cfg = base(Controller::Pi2Fixed, 0, 2.0);
  auto t = sim::run(cfg, 1);
  EXPECT_EQ(t.records.back().p_prime, 0.0);
}

TEST(Simulation, ControllerCadence) {
  for (auto c : {Controller::CurvyPi2, Controller::Pi2Fixed, Controller::PiFixed}) {
    auto cfg = base(c, 3, 10.0);
    const auto t = sim::run(cfg, 2);
    const auto expected = static_cast<std::uint64_t>(std::floor(cfg.duration / cfg.period));
    EXPECT_EQ(t.controller_updates, expected);
    ASSERT_EQ(t.records.size(), expected);
    for (std::size_t k = 0; k < t.records.size(); ++k) {
      ASSERT_EQ(t.records[k].time, static_cast<double>(k + 1) * cfg.period);
    }
  }
}

TEST(Simulation, DeterministicPerSeed) {
  auto cfg = base(Controller::CurvyPi2, 8);
  EXPECT_EQ(metrics::trace_hash(sim::run(cfg, 5)), metrics::trace_hash(sim::run(cfg, 5)));
  EXPECT_NE(metrics::trace_hash(sim::run(cfg, 5)), metrics::trace_hash(sim::run(cfg, 6)));
}

TEST(Simulation, ConservationForEveryController) {
  for (const auto& [c, _] : kControllerNames) {
    for (auto mode : {aqm::MarkingMode::Drop, aqm::MarkingMode::ClassicEcnMark}) {
      auto cfg = base(c, 6, 8.0);
      cfg.marking = mode;
      SCOPED_TRACE(std::string(to_string(c)) + "/" + std::string(aqm::to_string(mode)));
      expect_conserved(sim::run(cfg, 3));
    }
  }
}

TEST(Simulation, CumulativeCountersNeverDecrease) {
  const auto t = sim::run(base(Controller::CurvyPi2, 10), 1);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    ASSERT_GE(t.records[i].drops_cum, t.records[i - 1].drops_cum);
    ASSERT_GE(t.records[i].marks_cum, t.records[i - 1].marks_cum);
    ASSERT_GE(t.records[i].delivered_bytes_cum, t.records[i - 1].delivered_bytes_cum);
  }
}

TEST(Simulation, PiFamilyRowsCarrySquaredProbability) {
  const auto t = sim::run(base(Controller::CurvyPi2, 10), 1);
  for (const auto& r : t.records) ASSERT_EQ(r.p, r.p_prime * r.p_prime);
  const auto pi = sim::run(base(Controller::PiFixed, 10), 1);
  for (const auto& r : pi.records) ASSERT_EQ(r.p, r.p_prime);
}

TEST(Simulation, BacklogNeverExceedsCapacity) {
  auto cfg = base(Controller::None, 30);
  cfg.capacity = 60000;
  const auto t = sim::run(cfg, 1);
  for (const auto& r : t.records) ASSERT_LE(r.backlog, cfg.capacity);
}

TEST(Simulation, NoAqmIsPureTailDrop) {
  auto cfg = base(Controller::None, 30);
  cfg.capacity = 100000;
  const auto t = sim::run(cfg, 1);
  EXPECT_GT(t.total.dropped, 0u);
  EXPECT_EQ(t.total.dropped, t.tail_drops);
  std::uint64_t peak = 0;
  for (const auto& r : t.records) peak = std::max(peak, r.backlog);
  EXPECT_GT(peak, cfg.capacity - cfg.mss);
}

TEST(Simulation, EcnModeMarksInsteadOfDropping) {
  auto cfg = base(Controller::Pi2Fixed, 10);
  cfg.marking = aqm::MarkingMode::ClassicEcnMark;
  const auto t = sim::run(cfg, 1);
  EXPECT_GT(t.records.back().marks_cum, 0u);
  // only buffer overflow can drop an ECN-capable packet
  EXPECT_EQ(t.total.dropped, t.tail_drops);
}

TEST(Simulation, CodelUsesSoftTargetUnderLoad) {
  auto cfg = base(Controller::CodelSoft, 20);
  cfg.span = 0.095;
  const auto t = sim::run(cfg, 1);
  double max_target = 0.0;
  for (const auto& r : t.records) {
    ASSERT_GE(r.target, cfg.q0);
    ASSERT_LE(r.target, cfg.q0 + cfg.span);
    max_target = std::max(max_target, r.target);
  }
  EXPECT_GT(max_target, cfg.q0);
}

TEST(Simulation, ControllerHoldsQueueNearTarget) {
  auto cfg = base(Controller::Pi2Fixed, 20, 30.0);
  cfg.q0 = 0.010;
  const auto s = metrics::summarize(sim::run(cfg, 1), 10.0);
  EXPECT_NEAR(s.mean_delay, 0.010, 0.004);
  EXPECT_GT(s.goodput, 0.9 * cfg.link_bytes_per_second());
  EXPECT_LE(s.goodput, cfg.link_bytes_per_second());
}

TEST(Simulation, RejectsInvalidScenarioBeforeRunning) {
  auto cfg = base(Controller::CurvyPi2, 5);
  cfg.link_rate = 0.0;
  EXPECT_THROW(sim::run(cfg, 1), ConfigError);
}
