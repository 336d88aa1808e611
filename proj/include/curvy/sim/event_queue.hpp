#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "curvy/sim/queue.hpp"

namespace curvy::sim {

// Declaration order is the tie-break priority at equal timestamps.
enum class EventType : std::uint8_t { Departure = 0, ControllerTick = 1, Arrival = 2, FlowTimer = 3 };

enum class TimerKind : std::uint8_t { Start, Ack, LossSignal };

struct Event {
  double time = 0.0;
  EventType type = EventType::FlowTimer;
  std::uint64_t seq = 0;
  TimerKind timer = TimerKind::Start;
  Packet packet{};  // Arrival payload; flow id and send time for timers
  std::uint64_t tick = 0;
};

/// Min-heap ordered by (time, type, insertion sequence): a total order, so
/// execution never depends on heap internals.
class EventQueue {
 public:
  void push(Event ev) {
    ev.seq = next_seq_++;
    heap_.push(ev);
  }

  bool empty() const noexcept { return heap_.empty(); }
  const Event& top() const { return heap_.top(); }

  Event pop() {
    Event ev = heap_.top();
    heap_.pop();
    return ev;
  }

  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      if (a.type != b.type) return a.type > b.type;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace curvy::sim
