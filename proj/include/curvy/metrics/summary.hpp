#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "curvy/metrics/trace.hpp"

namespace curvy::metrics {

struct RunSummary {
  double mean_delay = 0.0;   // seconds
  double p99_delay = 0.0;    // seconds
  double mean_p = 0.0;
  double drop_rate = 0.0;    // drops / packets arriving
  double mark_rate = 0.0;    // marks / packets arriving
  double goodput = 0.0;      // bytes/second
  double recovery_rate = 0.0;  // loss repairs per flow per second

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Nearest-rank percentile, `pct` in (0, 100]. Sorts `values`.
inline double nearest_rank(std::vector<double>& values, double pct) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return values[rank - 1];
}

/// Steady-state statistics over rows with time >= warmup. Counter deltas
/// are taken from the last row before the window (or from zero at t = 0).
inline RunSummary summarize(const TraceSet& trace, double warmup) {
  const auto& rows = trace.records;
  const auto first = std::find_if(rows.begin(), rows.end(),
                                  [&](const TraceRecord& r) { return r.time >= warmup; });
  if (first == rows.end()) {
    throw std::invalid_argument("summarize: no trace rows after warmup");
  }
  const auto begin_idx = static_cast<std::size_t>(first - rows.begin());

  TraceRecord base{};
  std::uint64_t base_arrivals = 0;
  if (begin_idx > 0) {
    base = rows[begin_idx - 1];
    if (trace.arrivals_cum.size() == rows.size()) base_arrivals = trace.arrivals_cum[begin_idx - 1];
  }
  const TraceRecord& last = rows.back();

  RunSummary s;
  std::vector<double> delays;
  delays.reserve(rows.size() - begin_idx);
  double sum_delay = 0.0;
  double sum_p = 0.0;
  for (std::size_t i = begin_idx; i < rows.size(); ++i) {
    sum_delay += rows[i].queue_delay;
    sum_p += rows[i].p;
    delays.push_back(rows[i].queue_delay);
  }
  const auto n = static_cast<double>(delays.size());
  s.mean_delay = sum_delay / n;
  s.mean_p = sum_p / n;
  s.p99_delay = nearest_rank(delays, 99.0);

  const double drops = static_cast<double>(last.drops_cum - base.drops_cum);
  const double marks = static_cast<double>(last.marks_cum - base.marks_cum);
  std::uint64_t arrivals = 0;
  if (trace.arrivals_cum.size() == rows.size()) arrivals = trace.arrivals_cum.back() - base_arrivals;
  if (arrivals > 0) {
    s.drop_rate = std::min(1.0, drops / static_cast<double>(arrivals));
    s.mark_rate = std::min(1.0, marks / static_cast<double>(arrivals));
  }

  const double span = last.time - base.time;
  if (span > 0.0) {
    s.goodput = static_cast<double>(last.delivered_bytes_cum - base.delivered_bytes_cum) / span;
    if (trace.n_flows > 0) s.recovery_rate = drops / (trace.n_flows * span);
  }
  return s;
}

}  // namespace curvy::metrics
