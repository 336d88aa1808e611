#include <gtest/gtest.h>

#include "curvy/sim/event_queue.hpp"
#include "curvy/sim/queue.hpp"

using namespace curvy::sim;
using curvy::aqm::Decision;
using curvy::aqm::MarkingMode;
using curvy::aqm::Probability;

namespace {
BottleneckQueue make_queue(std::uint64_t capacity) {
  BottleneckQueue q;
  q.capacity = capacity;
  q.link_rate = 12.5e6;
  return q;
}
}  // namespace

TEST(SampleDelay, BacklogOverRate) {
  auto q = make_queue(1 << 20);
  EXPECT_EQ(sample_delay(q), 0.0);
  q.backlog = 125000;
  EXPECT_DOUBLE_EQ(sample_delay(q), 0.010);
}

TEST(SampleDelay, OnePacketOnEmptyLink) {
  auto q = make_queue(1 << 20);
  curvy::Pcg32 rng(1, 0);
  enqueue(q, Packet{0, 1500}, Probability{0.0}, MarkingMode::Drop, rng);
  EXPECT_DOUBLE_EQ(sample_delay(q), 120e-6);
}

TEST(Enqueue, ForwardsAtZeroProbability) {
  auto q = make_queue(1 << 20);
  curvy::Pcg32 rng(1, 0);
  const auto r = enqueue(q, Packet{0, 1500}, Probability{0.0}, MarkingMode::Drop, rng);
  EXPECT_EQ(r.decision, Decision::Forward);
  EXPECT_EQ(q.backlog, 1500u);
  EXPECT_EQ(q.fifo.size(), 1u);
}

TEST(Enqueue, TailDropsWhenFullEvenAtZeroProbability) {
  auto q = make_queue(3000);
  curvy::Pcg32 rng(1, 0);
  enqueue(q, Packet{0, 1500}, Probability{0.0}, MarkingMode::Drop, rng);
  enqueue(q, Packet{0, 1500}, Probability{0.0}, MarkingMode::Drop, rng);
  const auto r = enqueue(q, Packet{0, 1500}, Probability{0.0}, MarkingMode::Drop, rng);
  EXPECT_EQ(r.decision, Decision::Drop);
  EXPECT_TRUE(r.tail_drop);
  EXPECT_EQ(q.backlog, 3000u);
  EXPECT_LE(q.backlog, q.capacity);
}

TEST(Enqueue, UnitProbabilityNeverEnqueuesInDropMode) {
  auto q = make_queue(1 << 20);
  curvy::Pcg32 rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(enqueue(q, Packet{0, 1500}, Probability{1.0}, MarkingMode::Drop, rng).decision, Decision::Drop);
  }
  EXPECT_TRUE(q.empty());
}

TEST(Enqueue, MarkedPacketsAreQueued) {
  auto q = make_queue(1 << 20);
  curvy::Pcg32 rng(1, 0);
  Packet p{0, 1500};
  p.ecn_capable = true;
  const auto r = enqueue(q, p, Probability{1.0}, MarkingMode::ClassicEcnMark, rng);
  EXPECT_EQ(r.decision, Decision::Mark);
  ASSERT_EQ(q.fifo.size(), 1u);
  EXPECT_TRUE(q.fifo.front().marked);
}

TEST(EventQueue, OrdersByTimeThenTypeThenInsertion) {
  EventQueue q;
  auto push = [&](double t, EventType type, std::uint64_t tag) {
    Event e;
    e.time = t;
    e.type = type;
    e.tick = tag;
    q.push(e);
  };
  push(1.0, EventType::FlowTimer, 0);
  push(1.0, EventType::Arrival, 1);
  push(1.0, EventType::ControllerTick, 2);
  push(1.0, EventType::Departure, 3);
  push(0.5, EventType::FlowTimer, 4);
  push(1.0, EventType::Arrival, 5);
  std::vector<std::uint64_t> order;
  while (!q.empty()) order.push_back(q.pop().tick);
  EXPECT_EQ(order, (std::vector<std::uint64_t>{4, 3, 2, 1, 5, 0}));
}
