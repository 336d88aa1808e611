#pragma once

#include <cmath>
#include <stdexcept>

#include "curvy/aqm/probability.hpp"

namespace curvy::aqm {

/// Power-law drop curve on instantaneous queue delay. A stand-in for a
/// convex delay-based RED; exponent 1 is plain linear RED on delay.
struct ConvexRedConfig {
  double q_max = 0.1;  // seconds, delay where the curve saturates
  double exponent = 2.0;

  void validate() const {
    if (!(q_max > 0.0) || !std::isfinite(q_max)) throw std::invalid_argument("q_max must be > 0");
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw std::invalid_argument("exponent must be >= 1");
  }
};

inline Probability convex_red_pprime(const ConvexRedConfig& cfg, double q_now) noexcept {
  if (!(q_now > 0.0)) return Probability{};
  return Probability::from_clamped(std::pow(q_now / cfg.q_max, cfg.exponent));
}

}  // namespace curvy::aqm
