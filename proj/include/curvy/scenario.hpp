#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "curvy/aqm/codel.hpp"
#include "curvy/aqm/convex_red.hpp"
#include "curvy/aqm/marking.hpp"
#include "curvy/aqm/pi_controller.hpp"

namespace curvy {

enum class Controller { PiFixed, Pi2Fixed, CurvyPi2, ConvexRed, CodelFixed, CodelSoft, None };

inline constexpr std::array<std::pair<Controller, std::string_view>, 7> kControllerNames{{
    {Controller::PiFixed, "PiFixed"},
    {Controller::Pi2Fixed, "Pi2Fixed"},
    {Controller::CurvyPi2, "CurvyPi2"},
    {Controller::ConvexRed, "ConvexRed"},
    {Controller::CodelFixed, "CodelFixed"},
    {Controller::CodelSoft, "CodelSoft"},
    {Controller::None, "None"},
}};

constexpr std::string_view to_string(Controller c) noexcept {
  for (const auto& [k, name] : kControllerNames) {
    if (k == c) return name;
  }
  return "?";
}

inline std::optional<Controller> controller_from_string(std::string_view s) noexcept {
  for (const auto& [k, name] : kControllerNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

/// Error raised for an invalid scenario; `key()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Everything one simulation run needs. Rates are bits/second on the wire,
/// durations are seconds, sizes are bytes.
struct ScenarioConfig {
  std::string name = "scenario";
  Controller controller = Controller::CurvyPi2;
  aqm::MarkingMode marking = aqm::MarkingMode::Drop;
  double link_rate = 100e6;
  double rtt_base = 0.1;
  std::uint32_t n_flows = 10;
  double duration = 60.0;
  double warmup = 10.0;
  std::uint32_t mss = 1500;
  bool ecn_capable = true;

  double alpha = 0.25;
  double beta = 2.5;
  double period = 0.016;
  double q0 = 0.005;
  double q1 = 0.095;
  double interval = 0.1;
  double span = 0.095;
  double window = 1.0;
  double q_max = 0.1;
  double exponent = 2.0;

  std::uint64_t capacity = 0;  // bytes; 0 selects 4x the bandwidth-delay product
  std::uint64_t seed = 1;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  double link_bytes_per_second() const noexcept { return link_rate / 8.0; }

  std::uint64_t effective_capacity() const noexcept {
    if (capacity > 0) return capacity;
    const double bdp = link_bytes_per_second() * rtt_base;
    return std::max<std::uint64_t>(static_cast<std::uint64_t>(4.0 * bdp), mss);
  }

  aqm::SoftTargetCurve curve() const noexcept {
    return {q0, controller == Controller::CurvyPi2 ? q1 : 0.0};
  }

  aqm::PiControllerState pi_state() const noexcept {
    aqm::PiControllerState s;
    s.alpha = alpha;
    s.beta = beta;
    s.period = period;
    s.curve = curve();
    return s;
  }

  aqm::CodelSoftState codel_state() const noexcept {
    aqm::CodelSoftState s;
    s.base_target = q0;
    s.span = controller == Controller::CodelSoft ? span : 0.0;
    s.window = window;
    s.interval = interval;
    return s;
  }

  aqm::ConvexRedConfig red_config() const noexcept { return {q_max, exponent}; }

  void validate() const {
    auto positive = [](const char* key, double v) {
      if (!std::isfinite(v) || !(v > 0.0)) throw ConfigError(key, "must be a finite value > 0");
    };
    auto non_negative = [](const char* key, double v) {
      if (!std::isfinite(v) || !(v >= 0.0)) throw ConfigError(key, "must be a finite value >= 0");
    };
    if (name.empty()) throw ConfigError("name", "must not be empty");
    positive("link_rate", link_rate);
    positive("rtt_base", rtt_base);
    positive("duration", duration);
    non_negative("warmup", warmup);
    if (mss == 0) throw ConfigError("mss", "must be > 0");
    positive("alpha", alpha);
    positive("beta", beta);
    positive("period", period);
    positive("q0", q0);
    non_negative("q1", q1);
    positive("interval", interval);
    non_negative("span", span);
    positive("window", window);
    positive("q_max", q_max);
    if (!std::isfinite(exponent) || exponent < 1.0) throw ConfigError("exponent", "must be >= 1");
    if (capacity != 0 && capacity < mss) throw ConfigError("capacity", "must hold at least one packet");
    if (period > duration) throw ConfigError("period", "must not exceed duration");
  }
};

}  // namespace curvy
