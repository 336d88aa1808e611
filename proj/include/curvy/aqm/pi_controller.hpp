#pragma once

#include <cmath>
#include <stdexcept>

#include "curvy/aqm/probability.hpp"
#include "curvy/aqm/soft_target.hpp"

namespace curvy::aqm {

/// Persistent state of a PI / PI2 controller between sampling instants.
///
/// Gains are applied once per update and are expressed per second of delay:
///   p' += alpha * (q - target) + beta * (q - q_prev)
/// The target is read from `curve` at the p' produced by the previous update,
/// so the probability never depends on itself within one step.
struct PiControllerState {
  Probability p_prime{};
  double q_prev = 0.0;  // seconds
  double alpha = 0.25;
  double beta = 2.5;
  double period = 0.016;  // seconds
  SoftTargetCurve curve{};

  void validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("period must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
    curve.validate();
  }
};

struct PiUpdate {
  PiControllerState state;
  Probability p;       // applied probability, (p')^2
  double target = 0.0; // target used for this update, seconds
};

inline double pi_target(const PiControllerState& s) noexcept {
  return soft_target_from_pprime(s.curve, s.p_prime);
}

/// One sampling-period step. Throws std::domain_error on a non-finite delay
/// sample, which can only come from a corrupted queue measurement.
inline PiUpdate pi_update(const PiControllerState& state, double q_now) {
  if (!std::isfinite(q_now)) {
    throw std::domain_error("pi_update: non-finite queue delay sample");
  }
  const double target = pi_target(state);
  const double raw = state.p_prime.value() + state.alpha * (q_now - target) +
                     state.beta * (q_now - state.q_prev);

  PiUpdate out{state, {}, target};
  out.state.p_prime = Probability::from_clamped(raw);
  out.state.q_prev = q_now;
  out.p = square_probability(out.state.p_prime);
  return out;
}

}  // namespace curvy::aqm
