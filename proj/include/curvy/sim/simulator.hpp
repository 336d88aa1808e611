#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "curvy/metrics/trace.hpp"
#include "curvy/random.hpp"
#include "curvy/scenario.hpp"
#include "curvy/sim/aqm_controller.hpp"
#include "curvy/sim/event_queue.hpp"
#include "curvy/sim/queue.hpp"
#include "curvy/traffic/reno.hpp"

namespace curvy::sim {

/// Single bottleneck shared by n Reno senders.
///
/// Senders sit next to the bottleneck; a delivered packet is acknowledged
/// rtt_base after it leaves the link. A dropped packet is reported to its
/// sender one base RTT plus the current queue delay later, which is when the
/// duplicate ACKs of the packets behind it would arrive. Lost data is not
/// retransmitted. The random stream for AQM decisions is substream 0; flow i
/// draws its start jitter from substream i + 1.
class Simulation {
 public:
  Simulation(ScenarioConfig cfg, std::uint64_t seed)
      : cfg_(std::move(cfg)), seed_(seed), aqm_(cfg_), aqm_rng_(seed, 0) {
    cfg_.validate();
    queue_.capacity = cfg_.effective_capacity();
    queue_.link_rate = cfg_.link_bytes_per_second();
  }

  metrics::TraceSet run() {
    init();
    while (!events_.empty() && events_.top().time <= cfg_.duration) {
      const Event ev = events_.pop();
      now_ = ev.time;
      switch (ev.type) {
        case EventType::Departure: on_departure(); break;
        case EventType::ControllerTick: on_tick(ev.tick); break;
        case EventType::Arrival: on_arrival(ev.packet); break;
        case EventType::FlowTimer: on_timer(ev); break;
      }
    }
    return finish();
  }

 private:
  struct FlowRuntime {
    traffic::FlowState state;
    std::uint64_t inflight = 0;
    metrics::PacketCounts counts;
  };

  void init() {
    trace_ = {};
    trace_.n_flows = cfg_.n_flows;
    trace_.link_rate = queue_.link_rate;
    trace_.mss = cfg_.mss;

    flows_.assign(cfg_.n_flows, {});
    for (std::uint32_t i = 0; i < cfg_.n_flows; ++i) {
      auto& f = flows_[i].state;
      f.rtt_base = cfg_.rtt_base;
      f.mss = cfg_.mss;
      f.ecn_capable = cfg_.ecn_capable;
      Pcg32 rng(seed_, static_cast<std::uint64_t>(i) + 1);
      Event ev;
      ev.time = rng.uniform() * cfg_.rtt_base;
      ev.type = EventType::FlowTimer;
      ev.timer = TimerKind::Start;
      ev.packet.flow_id = i;
      events_.push(ev);
    }

    n_ticks_ = static_cast<std::uint64_t>(std::floor(cfg_.duration / cfg_.period));
    schedule_tick(1);
  }

  void schedule_tick(std::uint64_t k) {
    if (k > n_ticks_) return;
    Event ev;
    ev.time = static_cast<double>(k) * cfg_.period;
    ev.type = EventType::ControllerTick;
    ev.tick = k;
    events_.push(ev);
  }

  void on_tick(std::uint64_t k) {
    const double q = sample_delay(queue_);
    aqm_.on_tick(q, now_);
    metrics::TraceRecord row;
    row.time = now_;
    row.queue_delay = q;
    row.p_prime = aqm_.p_prime();
    row.p = aqm_.p();
    row.target = aqm_.target();
    row.backlog = queue_.backlog;
    row.drops_cum = trace_.total.dropped;
    row.marks_cum = marks_;
    row.delivered_bytes_cum = delivered_bytes_;
    metrics::record(trace_, row, trace_.total.generated);
    schedule_tick(k + 1);
  }

  void on_arrival(Packet pkt) {
    auto& flow = flows_[pkt.flow_id];
    ++flow.counts.generated;
    ++trace_.total.generated;

    const double q = sample_delay(queue_);
    pkt.enqueue_time = now_;
    const auto res = enqueue(queue_, pkt, aqm_.enqueue_probability(q), cfg_.marking, aqm_rng_);
    if (res.decision == aqm::Decision::Drop) {
      if (res.tail_drop) ++trace_.tail_drops;
      count_drop(pkt.flow_id, now_ + q + cfg_.rtt_base);
      return;
    }
    if (res.decision == aqm::Decision::Mark) ++marks_;
    if (!link_busy_) start_service();
  }

  void count_drop(std::uint32_t flow_id, double signal_time) {
    ++flows_[flow_id].counts.dropped;
    ++trace_.total.dropped;
    Event ev;
    ev.time = signal_time;
    ev.type = EventType::FlowTimer;
    ev.timer = TimerKind::LossSignal;
    ev.packet.flow_id = flow_id;
    events_.push(ev);
  }

  void start_service() {
    while (!queue_.empty()) {
      Packet& head = queue_.fifo.front();
      if (aqm_.is_codel() && aqm_.dequeue_signal(now_ - head.enqueue_time, now_)) {
        if (cfg_.marking == aqm::MarkingMode::ClassicEcnMark && head.ecn_capable) {
          aqm_.dequeue_marked();
          if (!head.marked) ++marks_;
          head.marked = true;
        } else {
          const std::uint32_t flow_id = head.flow_id;
          queue_.backlog -= head.size;
          queue_.fifo.pop_front();
          count_drop(flow_id, now_ + cfg_.rtt_base);
          continue;
        }
      }
      link_busy_ = true;
      Event ev;
      ev.time = now_ + static_cast<double>(head.size) / queue_.link_rate;
      ev.type = EventType::Departure;
      events_.push(ev);
      return;
    }
    aqm_.dequeue_idle(now_);
  }

  void on_departure() {
    const Packet pkt = queue_.fifo.front();
    queue_.fifo.pop_front();
    queue_.backlog -= pkt.size;
    link_busy_ = false;

    ++flows_[pkt.flow_id].counts.delivered;
    ++trace_.total.delivered;
    delivered_bytes_ += pkt.size;

    Event ev;
    ev.time = now_ + cfg_.rtt_base;
    ev.type = EventType::FlowTimer;
    ev.timer = TimerKind::Ack;
    ev.packet = pkt;
    events_.push(ev);

    start_service();
  }

  void on_timer(const Event& ev) {
    const std::uint32_t id = ev.packet.flow_id;
    auto& flow = flows_[id];
    switch (ev.timer) {
      case TimerKind::Start:
        break;
      case TimerKind::Ack:
        --flow.inflight;
        flow.state.srtt = now_ - ev.packet.sent_time;
        traffic::flow_release_recovery(flow.state, now_);
        if (ev.packet.marked) {
          flow.state = traffic::flow_on_congestion(flow.state, now_);
        } else {
          flow.state = traffic::flow_on_ack(flow.state, ev.packet.size);
        }
        break;
      case TimerKind::LossSignal:
        --flow.inflight;
        flow.state = traffic::flow_on_congestion(flow.state, now_);
        break;
    }
    try_send(id);
  }

  // Keep floor(cwnd) segments outstanding.
  void try_send(std::uint32_t id) {
    auto& flow = flows_[id];
    while (static_cast<double>(flow.inflight + 1) <= flow.state.cwnd) {
      ++flow.inflight;
      Event ev;
      ev.time = now_;
      ev.type = EventType::Arrival;
      ev.packet.flow_id = id;
      ev.packet.size = cfg_.mss;
      ev.packet.sent_time = now_;
      ev.packet.ecn_capable = flow.state.ecn_capable;
      events_.push(ev);
    }
  }

  metrics::TraceSet finish() {
    trace_.total.queued = queue_.fifo.size();
    trace_.per_flow.clear();
    for (const auto& f : flows_) trace_.per_flow.push_back(f.counts);
    for (const auto& pkt : queue_.fifo) ++trace_.per_flow[pkt.flow_id].queued;
    trace_.controller_updates = aqm_.updates();
    return std::move(trace_);
  }

  ScenarioConfig cfg_;
  std::uint64_t seed_;
  AqmController aqm_;
  Pcg32 aqm_rng_;
  BottleneckQueue queue_;
  EventQueue events_;
  std::vector<FlowRuntime> flows_;
  metrics::TraceSet trace_;

  double now_ = 0.0;
  bool link_busy_ = false;
  std::uint64_t n_ticks_ = 0;
  std::uint64_t marks_ = 0;
  std::uint64_t delivered_bytes_ = 0;
};

/// Simulate `scenario` with the given seed. Throws ConfigError before any
/// simulation work if the scenario is invalid.
inline metrics::TraceSet run(const ScenarioConfig& scenario, std::uint64_t seed) {
  return Simulation(scenario, seed).run();
}

inline metrics::TraceSet run(const ScenarioConfig& scenario) { return run(scenario, scenario.seed); }

}  // namespace curvy::sim
