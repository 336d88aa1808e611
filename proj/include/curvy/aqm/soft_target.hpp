#pragma once

#include <cmath>
#include <stdexcept>

#include "curvy/aqm/probability.hpp"

namespace curvy::aqm {

/// Delay target that grows with the congestion level.
///
/// `q0` is the target with no congestion signal and `q1` is the span added
/// when the unsquared probability p' reaches 1, so the largest target is
/// q0 + q1. Setting q1 = 0 gives the classic fixed target.
struct SoftTargetCurve {
  double q0 = 0.005;  // seconds
  double q1 = 0.0;    // seconds

  void validate() const {
    if (!(q0 > 0.0) || !std::isfinite(q0)) throw std::invalid_argument("q0 must be > 0");
    if (!(q1 >= 0.0) || !std::isfinite(q1)) throw std::invalid_argument("q1 must be >= 0");
  }

  bool is_fixed() const noexcept { return q1 == 0.0; }
};

/// Target as a function of the unsquared controller output p'.
inline double soft_target_from_pprime(const SoftTargetCurve& curve, Probability p_prime) noexcept {
  return curve.q0 + curve.q1 * p_prime.value();
}

/// Target as a function of the applied (squared) probability p = p'^2.
inline double soft_target_from_p(const SoftTargetCurve& curve, Probability p) noexcept {
  return curve.q0 + curve.q1 * std::sqrt(p.value());
}

inline Probability square_probability(Probability p_prime) noexcept {
  return Probability::from_clamped(p_prime.value() * p_prime.value());
}

}  // namespace curvy::aqm
