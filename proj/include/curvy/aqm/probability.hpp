#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvy::aqm {

// Clamp into [0,1]. NaN is mapped to 0 so it can never escape as a probability.
constexpr double clamp01(double v) noexcept {
  if (!(v > 0.0)) return 0.0;
  return v < 1.0 ? v : 1.0;
}

/// A value in the unit interval. Construction validates; use from_clamped()
/// for controller outputs that may overshoot before saturation.
class Probability {
 public:
  constexpr Probability() noexcept = default;

  explicit Probability(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("probability outside [0,1]");
    }
  }

  static constexpr Probability from_clamped(double v) noexcept {
    Probability p;
    p.value_ = clamp01(v);
    return p;
  }

  constexpr double value() const noexcept { return value_; }

  friend constexpr bool operator==(Probability, Probability) = default;
  friend constexpr auto operator<=>(Probability, Probability) = default;

 private:
  double value_ = 0.0;
};

}  // namespace curvy::aqm
