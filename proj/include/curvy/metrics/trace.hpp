#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace curvy::metrics {

/// One row per controller tick.
struct TraceRecord {
  double time = 0.0;         // seconds
  double queue_delay = 0.0;  // seconds, backlog / link rate
  double p_prime = 0.0;
  double p = 0.0;
  double target = 0.0;       // seconds; 0 when the controller has none
  std::uint64_t backlog = 0;  // bytes
  std::uint64_t drops_cum = 0;
  std::uint64_t marks_cum = 0;
  std::uint64_t delivered_bytes_cum = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Packet accounting at the bottleneck for one flow (or the aggregate).
struct PacketCounts {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t queued = 0;

  bool conserved() const noexcept { return generated == delivered + dropped + queued; }
};

struct TraceSet {
  std::vector<TraceRecord> records;
  // Cumulative bottleneck arrivals at each record; not part of the CSV.
  std::vector<std::uint64_t> arrivals_cum;

  std::uint32_t n_flows = 0;
  double link_rate = 0.0;  // bytes/second
  double mss = 1500.0;

  PacketCounts total;
  std::vector<PacketCounts> per_flow;
  std::uint64_t controller_updates = 0;
  std::uint64_t tail_drops = 0;
};

/// Append one tick's observables.
inline void record(TraceSet& trace, const TraceRecord& row, std::uint64_t arrivals_cum) {
  trace.records.push_back(row);
  trace.arrivals_cum.push_back(arrivals_cum);
}

}  // namespace curvy::metrics
