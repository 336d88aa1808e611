#pragma once

#include <utility>

#include "curvy/aqm/codel.hpp"
#include "curvy/aqm/convex_red.hpp"
#include "curvy/aqm/pi_controller.hpp"
#include "curvy/scenario.hpp"

namespace curvy::sim {

/// Binds one of the AQM algorithms to the simulator's three hooks: the
/// periodic tick, the enqueue decision and (CoDel only) the dequeue decision.
class AqmController {
 public:
  explicit AqmController(const ScenarioConfig& cfg)
      : kind_(cfg.controller), pi_(cfg.pi_state()), red_(cfg.red_config()), codel_(cfg.codel_state()) {
    if (is_pi()) target_ = aqm::pi_target(pi_);
    if (is_codel()) target_ = aqm::codel_soft_target(codel_);
  }

  bool is_pi() const noexcept {
    return kind_ == Controller::PiFixed || kind_ == Controller::Pi2Fixed || kind_ == Controller::CurvyPi2;
  }
  bool is_codel() const noexcept {
    return kind_ == Controller::CodelFixed || kind_ == Controller::CodelSoft;
  }

  /// Periodic sample of the queue delay.
  void on_tick(double q_now, double now) {
    switch (kind_) {
      case Controller::PiFixed:
      case Controller::Pi2Fixed:
      case Controller::CurvyPi2: {
        const auto up = aqm::pi_update(pi_, q_now);
        pi_ = up.state;
        target_ = up.target;
        p_prime_ = pi_.p_prime.value();
        // plain PI applies p' directly
        p_ = kind_ == Controller::PiFixed ? p_prime_ : up.p.value();
        ++updates_;
        break;
      }
      case Controller::ConvexRed:
        p_prime_ = p_ = aqm::convex_red_pprime(red_, q_now).value();
        break;
      case Controller::CodelFixed:
      case Controller::CodelSoft:
        aqm::codel_expire(codel_, now);
        p_prime_ = p_ = aqm::codel_drop_estimate(codel_);
        target_ = aqm::codel_soft_target(codel_);
        break;
      case Controller::None:
        break;
    }
  }

  /// Signal probability for a packet arriving when the queue delay is q_now.
  aqm::Probability enqueue_probability(double q_now) const noexcept {
    if (is_pi()) return aqm::Probability::from_clamped(p_);
    if (kind_ == Controller::ConvexRed) return aqm::convex_red_pprime(red_, q_now);
    return {};
  }

  /// CoDel's verdict for the packet at the head of the queue.
  bool dequeue_signal(double sojourn, double now) {
    if (!is_codel()) return false;
    auto step = aqm::codel_step(std::move(codel_), sojourn, now);
    codel_ = std::move(step.state);
    return step.drop;
  }

  void dequeue_idle(double now) {
    if (is_codel()) aqm::codel_idle(codel_, now);
  }

  void dequeue_marked() {
    if (is_codel()) aqm::codel_mark_instead(codel_);
  }

  double p_prime() const noexcept { return p_prime_; }
  double p() const noexcept { return p_; }
  double target() const noexcept { return target_; }
  std::uint64_t updates() const noexcept { return updates_; }

 private:
  Controller kind_;
  aqm::PiControllerState pi_;
  aqm::ConvexRedConfig red_;
  aqm::CodelSoftState codel_;
  double p_prime_ = 0.0;
  double p_ = 0.0;
  double target_ = 0.0;
  std::uint64_t updates_ = 0;
};

}  // namespace curvy::sim
