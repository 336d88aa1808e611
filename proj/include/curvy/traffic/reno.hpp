#pragma once

#include <algorithm>
#include <cstdint>

namespace curvy::traffic {

/// Window state of one AIMD (Reno-like) sender. Windows are in segments.
struct FlowState {
  double cwnd = 2.0;
  double ssthresh = 1e9;
  double rtt_base = 0.1;  // seconds
  std::uint32_t mss = 1500;
  bool in_recovery = false;
  bool ecn_capable = true;
  double recovery_end = 0.0;  // latch released at this time
  double srtt = 0.0;          // latest RTT sample, 0 until the first ACK

  double rtt_estimate() const noexcept { return srtt > 0.0 ? srtt : rtt_base; }
};

inline void flow_release_recovery(FlowState& f, double now) noexcept {
  if (f.in_recovery && now >= f.recovery_end) f.in_recovery = false;
}

/// Window growth for `acked` bytes of newly acknowledged data.
inline FlowState flow_on_ack(FlowState flow, std::uint64_t acked) noexcept {
  const double segments = static_cast<double>(acked) / static_cast<double>(flow.mss);
  if (flow.cwnd < flow.ssthresh) {
    flow.cwnd += segments;
  } else {
    flow.cwnd += segments / flow.cwnd;
  }
  return flow;
}

/// Halve the window at most once per round trip. Drops and classic ECN marks
/// take the same path.
inline FlowState flow_on_congestion(FlowState flow, double now) noexcept {
  flow_release_recovery(flow, now);
  if (flow.in_recovery) return flow;
  flow.cwnd = std::max(1.0, flow.cwnd / 2.0);
  flow.ssthresh = flow.cwnd;
  flow.in_recovery = true;
  flow.recovery_end = now + flow.rtt_estimate();
  return flow;
}

}  // namespace curvy::traffic
