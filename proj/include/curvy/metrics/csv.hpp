#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "curvy/metrics/summary.hpp"
#include "curvy/metrics/trace.hpp"

namespace curvy::metrics {

inline constexpr std::string_view kTraceHeader =
    "time_s,queue_delay_s,p_prime,p,target_s,backlog_bytes,drops_cum,marks_cum,delivered_bytes_cum";

inline constexpr std::string_view kSummaryHeader =
    "scenario,controller,n_flows,seed,mean_delay_s,p99_delay_s,mean_p,drop_rate,mark_rate,"
    "goodput_Bps,recovery_rate,axis_value,oracle_p,oracle_delay_s,error";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline void write_trace_csv(const TraceSet& trace, std::ostream& os) {
  os << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    os << format_double(r.time) << ',' << format_double(r.queue_delay) << ','
       << format_double(r.p_prime) << ',' << format_double(r.p) << ','
       << format_double(r.target) << ',' << r.backlog << ',' << r.drops_cum << ','
       << r.marks_cum << ',' << r.delivered_bytes_cum << '\n';
  }
}

inline std::vector<TraceRecord> parse_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader) {
    throw std::invalid_argument("trace csv: missing or unexpected header");
  }
  std::vector<TraceRecord> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::invalid_argument("trace csv: expected 9 columns, got " + std::to_string(f.size()));
    TraceRecord r;
    r.time = parse_double(f[0]);
    r.queue_delay = parse_double(f[1]);
    r.p_prime = parse_double(f[2]);
    r.p = parse_double(f[3]);
    r.target = parse_double(f[4]);
    r.backlog = parse_u64(f[5]);
    r.drops_cum = parse_u64(f[6]);
    r.marks_cum = parse_u64(f[7]);
    r.delivered_bytes_cum = parse_u64(f[8]);
    rows.push_back(r);
  }
  return rows;
}

namespace detail {
inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

inline void finish_write(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}
}  // namespace detail

inline void write_trace_csv(const TraceSet& trace, const std::filesystem::path& path) {
  auto os = detail::open_for_write(path);
  write_trace_csv(trace, os);
  detail::finish_write(os, path);
}

/// FNV-1a 64 of the trace CSV text.
inline std::uint64_t trace_hash(const TraceSet& trace) {
  std::ostringstream os;
  write_trace_csv(trace, os);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct SummaryRow {
  std::string scenario;
  std::string controller;
  std::uint32_t n_flows = 0;
  std::uint64_t seed = 0;
  RunSummary summary;
  std::string axis_value;
  std::optional<double> oracle_p;
  std::optional<double> oracle_delay;
  std::string error;  // empty when the run succeeded
};

namespace detail {
// Keep a free-text field inside one CSV cell.
inline std::string sanitize_cell(std::string s) {
  for (auto& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}
}  // namespace detail

inline void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& os) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    os << detail::sanitize_cell(r.scenario) << ',' << r.controller << ',' << r.n_flows << ',' << r.seed << ',';
    if (r.error.empty()) {
      const auto& s = r.summary;
      os << format_double(s.mean_delay) << ',' << format_double(s.p99_delay) << ','
         << format_double(s.mean_p) << ',' << format_double(s.drop_rate) << ','
         << format_double(s.mark_rate) << ',' << format_double(s.goodput) << ','
         << format_double(s.recovery_rate) << ',';
    } else {
      os << ",,,,,,,";
    }
    os << detail::sanitize_cell(r.axis_value) << ',';
    if (r.oracle_p) os << format_double(*r.oracle_p);
    os << ',';
    if (r.oracle_delay) os << format_double(*r.oracle_delay);
    os << ',' << detail::sanitize_cell(r.error) << '\n';
  }
}

inline void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  auto os = detail::open_for_write(path);
  write_summary_csv(rows, os);
  detail::finish_write(os, path);
}

}  // namespace curvy::metrics
