#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "curvy/aqm/probability.hpp"
#include "curvy/aqm/soft_target.hpp"

namespace curvy::traffic {

/// Steady-state Reno throughput in bytes/s: (mss/rtt) * sqrt(3 / (2p)).
inline double reno_steady_rate(aqm::Probability p, double rtt, double mss) {
  if (!(p.value() > 0.0)) throw std::domain_error("reno_steady_rate: p must be > 0");
  if (!(rtt > 0.0)) throw std::domain_error("reno_steady_rate: rtt must be > 0");
  return (mss / rtt) * std::sqrt(1.5 / p.value());
}

struct FluidLoad {
  std::uint32_t n_flows = 1;
  double rtt_base = 0.1;  // seconds
  double mss = 1500.0;    // bytes

  void validate() const {
    if (n_flows < 1) throw std::invalid_argument("fluid load needs at least one flow");
    if (!(rtt_base > 0.0)) throw std::invalid_argument("rtt_base must be > 0");
    if (!(mss > 0.0)) throw std::invalid_argument("mss must be > 0");
  }
};

struct Equilibrium {
  aqm::Probability p;  // applied loss probability
  double q = 0.0;      // queue delay, seconds
};

class InfeasibleLoad : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Aggregate rate minus link rate at loss probability p, with the queue
/// sitting on the soft target for that p.
inline double equilibrium_residual(const FluidLoad& load, double link_rate,
                                   const aqm::SoftTargetCurve& curve, double p) {
  const aqm::Probability prob{p};
  const double q = aqm::soft_target_from_p(curve, prob);
  return load.n_flows * reno_steady_rate(prob, load.rtt_base + q, load.mss) - link_rate;
}

/// Operating point where the queue sits on its target and n Reno flows fill
/// the link exactly. The residual is strictly decreasing in p, so bisection
/// over [1e-9, 1] finds the unique root.
inline Equilibrium solve_equilibrium(const FluidLoad& load, double link_rate,
                                     const aqm::SoftTargetCurve& curve) {
  load.validate();
  curve.validate();
  if (!(link_rate > 0.0)) throw std::invalid_argument("link_rate must be > 0");

  double lo = 1e-9;
  double hi = 1.0;
  const double r_lo = equilibrium_residual(load, link_rate, curve, lo);
  const double r_hi = equilibrium_residual(load, link_rate, curve, hi);
  if (r_lo < 0.0) throw InfeasibleLoad("load too light: link not filled even at p = 1e-9");
  if (r_hi > 0.0) throw InfeasibleLoad("load infeasible: flows exceed link even at p = 1");

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (equilibrium_residual(load, link_rate, curve, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double p = 0.5 * (lo + hi);
  const aqm::Probability prob{p};
  return {prob, aqm::soft_target_from_p(curve, prob)};
}

}  // namespace curvy::traffic
