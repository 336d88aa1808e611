#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "curvy/cli/scenario_file.hpp"
#include "curvy/metrics/csv.hpp"
#include "curvy/metrics/summary.hpp"
#include "curvy/sim/simulator.hpp"
#include "curvy/traffic/fluid.hpp"

namespace curvy::cli {

/// A base scenario swept along one key, `repeats` seeds per point. An
/// optional controller list runs the same grid once per controller with the
/// same seeds, so controllers are compared on paired runs.
struct SweepSpec {
  ScenarioConfig base;
  std::string axis;
  std::vector<Value> values;
  std::uint32_t repeats = 1;
  std::vector<Controller> controllers;  // empty: base.controller only

  void validate() const {
    if (values.empty()) throw ConfigError("sweep.values", "must not be empty");
    if (repeats < 1) throw ConfigError("sweep.repeats", "must be >= 1");
    if (axis == "seed" || axis == "name") throw ConfigError("sweep.axis", "cannot sweep '" + axis + "'");
    if (!find_field(axis)) reject_unknown("sweep.axis = " + axis, scenario_keys());
    for (std::size_t i = 0; i < values.size(); ++i) {
      ScenarioConfig probe = base;
      find_field(axis)->set(probe, values[i], "sweep.values[" + std::to_string(i) + "]");
      probe.validate();
    }
  }
};

// Directory and CSV label for an axis value: its source text.
inline std::string value_label(const Value& v) { return v.text; }

inline SweepSpec sweep_from_entries(const std::vector<Entry>& entries) {
  SweepSpec spec;
  spec.base = scenario_from_entries(entries, {"sweep"});
  bool have_axis = false;
  bool have_values = false;
  for (const auto& e : entries) {
    if (e.key.rfind("sweep.", 0) != 0) continue;
    if (e.key == "sweep.axis") {
      spec.axis = detail::as_string(e.value, e.key);
      have_axis = true;
    } else if (e.key == "sweep.values") {
      if (e.value.kind != Value::Kind::Array) throw ConfigError(e.key, "expected an array");
      spec.values = e.value.items;
      have_values = true;
    } else if (e.key == "sweep.repeats") {
      spec.repeats = static_cast<std::uint32_t>(detail::as_count(e.value, e.key, 1000000));
    } else if (e.key == "sweep.controllers") {
      if (e.value.kind != Value::Kind::Array) throw ConfigError(e.key, "expected an array");
      for (std::size_t i = 0; i < e.value.items.size(); ++i) {
        const std::string where = e.key + "[" + std::to_string(i) + "]";
        const auto name = detail::as_string(e.value.items[i], where);
        const auto c = controller_from_string(name);
        if (!c) throw ConfigError(where, "unknown controller '" + name + "'");
        spec.controllers.push_back(*c);
      }
    } else {
      reject_unknown(e.key, {"sweep.axis", "sweep.values", "sweep.repeats", "sweep.controllers"});
    }
  }
  if (!have_axis) throw ConfigError("sweep.axis", "required key missing");
  if (!have_values) throw ConfigError("sweep.values", "required key missing");
  spec.validate();
  return spec;
}

inline SweepSpec parse_sweep(const std::filesystem::path& path) {
  return sweep_from_entries(parse_kv(read_file(path)));
}

/// Seed for axis index i, repeat j.
inline std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t i, std::size_t j) {
  return base_seed + static_cast<std::uint64_t>(i) * 1000000ULL + j;
}

/// Fluid-model prediction for PI-family controllers; empty otherwise or when
/// the load has no equilibrium.
inline std::optional<traffic::Equilibrium> fluid_prediction(const ScenarioConfig& cfg) {
  const bool pi_family = cfg.controller == Controller::PiFixed || cfg.controller == Controller::Pi2Fixed ||
                         cfg.controller == Controller::CurvyPi2;
  if (!pi_family || cfg.n_flows == 0) return std::nullopt;
  try {
    return traffic::solve_equilibrium({cfg.n_flows, cfg.rtt_base, static_cast<double>(cfg.mss)},
                                      cfg.link_bytes_per_second(), cfg.curve());
  } catch (const traffic::InfeasibleLoad&) {
    return std::nullopt;
  }
}

/// Run one scenario and produce its summary row. Writes the trace when
/// `trace_path` is set. Failures are captured in the row, not thrown.
inline metrics::SummaryRow run_one(const ScenarioConfig& cfg, std::uint64_t seed,
                                   const std::optional<std::filesystem::path>& trace_path,
                                   std::string axis_value = {}) {
  metrics::SummaryRow row;
  row.scenario = cfg.name;
  row.controller = std::string(to_string(cfg.controller));
  row.n_flows = cfg.n_flows;
  row.seed = seed;
  row.axis_value = std::move(axis_value);
  if (const auto eq = fluid_prediction(cfg)) {
    row.oracle_p = eq->p.value();
    row.oracle_delay = eq->q;
  }
  try {
    const auto trace = sim::run(cfg, seed);
    if (!trace.total.conserved()) throw std::logic_error("packet conservation violated");
    if (trace_path) metrics::write_trace_csv(trace, *trace_path);
    row.summary = metrics::summarize(trace, cfg.warmup);
  } catch (const std::exception& ex) {
    row.error = ex.what();
  }
  return row;
}

struct SweepRun {
  ScenarioConfig cfg;
  std::uint64_t seed = 0;
  std::string axis_value;
  std::filesystem::path trace_path;
};

/// The run grid in output order: controller, then axis value, then repeat.
inline std::vector<SweepRun> plan_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir) {
  std::vector<Controller> controllers = spec.controllers;
  const bool multi = !controllers.empty();
  if (!multi) controllers.push_back(spec.base.controller);

  const auto* axis = find_field(spec.axis);
  std::vector<SweepRun> runs;
  for (const auto c : controllers) {
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      for (std::uint32_t j = 0; j < spec.repeats; ++j) {
        SweepRun r;
        r.cfg = spec.base;
        r.cfg.controller = c;
        axis->set(r.cfg, spec.values[i], "sweep.values");
        r.seed = sweep_seed(spec.base.seed, i, j);
        r.axis_value = value_label(spec.values[i]);
        const std::string dir = multi ? spec.base.name + "-" + std::string(to_string(c)) : spec.base.name;
        r.trace_path = out_dir / dir / r.axis_value / ("seed-" + std::to_string(r.seed)) / "trace.csv";
        runs.push_back(std::move(r));
      }
    }
  }
  return runs;
}

/// Execute every grid point, `threads` at a time, and write
/// `<out_dir>/summary.csv`. Row order follows the grid, not completion.
inline std::vector<metrics::SummaryRow> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                                  unsigned threads = 0) {
  spec.validate();
  const auto runs = plan_sweep(spec, out_dir);
  std::vector<metrics::SummaryRow> rows(runs.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < runs.size(); k = next++) {
      rows[k] = run_one(runs[k].cfg, runs[k].seed, runs[k].trace_path, runs[k].axis_value);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  metrics::write_summary_csv(rows, out_dir / "summary.csv");
  return rows;
}

}  // namespace curvy::cli
