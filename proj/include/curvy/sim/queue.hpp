#pragma once

#include <cstdint>
#include <deque>

#include "curvy/aqm/marking.hpp"
#include "curvy/random.hpp"

namespace curvy::sim {

struct Packet {
  std::uint32_t flow_id = 0;
  std::uint32_t size = 1500;   // bytes
  double enqueue_time = 0.0;
  double sent_time = 0.0;
  bool ecn_capable = false;
  bool marked = false;
};

/// FIFO byte queue in front of a fixed-rate link. The packet being
/// transmitted stays at the front and counts toward the backlog until it
/// departs.
struct BottleneckQueue {
  std::uint64_t backlog = 0;   // bytes
  std::uint64_t capacity = 0;  // bytes, hard tail-drop limit
  double link_rate = 0.0;      // bytes/second
  std::deque<Packet> fifo;

  bool empty() const noexcept { return fifo.empty(); }
};

/// Queuing delay seen by a new arrival: backlog / link rate.
inline double sample_delay(const BottleneckQueue& q) noexcept {
  return static_cast<double>(q.backlog) / q.link_rate;
}

struct EnqueueResult {
  aqm::Decision decision = aqm::Decision::Forward;
  bool tail_drop = false;
};

/// AQM decision then admission. The decision draw always happens, so the
/// random stream does not depend on queue occupancy. A packet that does not
/// fit is tail-dropped whatever the AQM said.
inline EnqueueResult enqueue(BottleneckQueue& q, Packet pkt, aqm::Probability p, aqm::MarkingMode mode,
                             Pcg32& rng) {
  const auto d = aqm::decide(p, mode, pkt.ecn_capable, rng);
  if (d == aqm::Decision::Drop) return {d, false};
  if (q.backlog + pkt.size > q.capacity) return {aqm::Decision::Drop, true};
  pkt.marked = pkt.marked || d == aqm::Decision::Mark;
  q.backlog += pkt.size;
  q.fifo.push_back(pkt);
  return {d, false};
}

}  // namespace curvy::sim
