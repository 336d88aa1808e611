// curvypi: run, sweep and inspect single-bottleneck AQM scenarios.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "curvy/cli/curve.hpp"
#include "curvy/cli/scenario_file.hpp"
#include "curvy/cli/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CURVY_OUT_DIR"); env && *env) return env;
  return "out";
}

void print_row(const curvy::metrics::SummaryRow& r) {
  using curvy::metrics::format_double;
  std::cout << r.scenario << " controller=" << r.controller << " n_flows=" << r.n_flows << " seed=" << r.seed;
  if (!r.axis_value.empty()) std::cout << " axis=" << r.axis_value;
  if (!r.error.empty()) {
    std::cout << " FAILED: " << r.error << '\n';
    return;
  }
  const auto& s = r.summary;
  std::cout << " mean_delay_s=" << format_double(s.mean_delay) << " p99_delay_s=" << format_double(s.p99_delay)
            << " mean_p=" << format_double(s.mean_p) << " drop_rate=" << format_double(s.drop_rate)
            << " mark_rate=" << format_double(s.mark_rate) << " goodput_Bps=" << format_double(s.goodput);
  if (r.oracle_p) std::cout << " oracle_p=" << format_double(*r.oracle_p);
  std::cout << '\n';
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::string& out) {
  auto cfg = curvy::cli::parse_scenario(scenario_path);
  if (seed) cfg.seed = *seed;
  const fs::path dir = output_dir(out);
  const auto trace_path = dir / cfg.name / ("seed-" + std::to_string(cfg.seed)) / "trace.csv";
  const auto row = curvy::cli::run_one(cfg, cfg.seed, trace_path);
  curvy::metrics::write_summary_csv({row}, dir / "summary.csv");
  print_row(row);
  return row.error.empty() ? kExitOk : kExitRuntime;
}

int cmd_sweep(const std::string& spec_path, const std::string& out, unsigned threads) {
  const auto spec = curvy::cli::parse_sweep(spec_path);
  const fs::path dir = output_dir(out);
  const auto rows = curvy::cli::run_sweep(spec, dir, threads);
  bool failed = false;
  for (const auto& r : rows) {
    print_row(r);
    failed = failed || !r.error.empty();
  }
  std::cout << "summary: " << (dir / "summary.csv").string() << '\n';
  return failed ? kExitRuntime : kExitOk;
}

int cmd_curve(double q0_ms, double q1_ms, std::size_t grid, const std::string& out) {
  const curvy::aqm::SoftTargetCurve curve{q0_ms * 1e-3, q1_ms * 1e-3};
  try {
    curve.validate();
    if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  } catch (const std::invalid_argument& ex) {
    throw curvy::ConfigError("curve", ex.what());
  }
  if (out.empty()) {
    curvy::cli::print_target_curve(curve, grid, std::cout);
    return kExitOk;
  }
  std::ofstream os(out);
  if (!os) throw curvy::metrics::IoError("cannot open '" + out + "' for writing");
  curvy::cli::print_target_curve(curve, grid, os);
  return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
  const auto cfg = curvy::cli::parse_scenario(scenario_path);
  std::cout << curvy::cli::serialize_scenario(cfg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-bottleneck AQM simulator with soft delay targets"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  double q0_ms = 0.0;
  double q1_ms = 0.0;
  std::size_t grid = 101;

  auto* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out, "Output directory (default $CURVY_OUT_DIR or ./out)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("spec", scenario_path, "Sweep spec file")->required();
  sweep->add_option("--out", out, "Output directory (default $CURVY_OUT_DIR or ./out)");
  sweep->add_option("--threads", threads, "Parallel runs (default: hardware threads)");

  auto* curve = app.add_subcommand("curve", "Print the soft delay target curve as CSV");
  curve->add_option("--q0", q0_ms, "Minimum target in ms")->required();
  curve->add_option("--q1", q1_ms, "Target span in ms")->required();
  curve->add_option("--grid", grid, "Grid points over [0,1]");
  curve->add_option("--out", out, "Write to this file instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check a scenario file and print it normalized");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) return cmd_run(scenario_path, seed, out);
    if (*sweep) return cmd_sweep(scenario_path, out, threads);
    if (*curve) return cmd_curve(q0_ms, q1_ms, grid, out);
    if (*validate) return cmd_validate(scenario_path);
  } catch (const curvy::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
