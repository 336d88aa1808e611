#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>

#include "curvy/aqm/soft_target.hpp"
#include "curvy/metrics/csv.hpp"

namespace curvy::cli {

inline constexpr std::string_view kCurveHeader = "p_prime,target_pprime_ms,p,target_p_ms";

/// Target curve sampled on a uniform grid of `grid` points over [0,1], once
/// against p' and once against p. Targets are in milliseconds.
inline void print_target_curve(const aqm::SoftTargetCurve& curve, std::size_t grid, std::ostream& os) {
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  curve.validate();
  os << kCurveHeader << '\n';
  for (std::size_t i = 0; i < grid; ++i) {
    // last point exactly 1
    const double x = i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
    const aqm::Probability pr{x};
    os << metrics::format_double(x) << ',' << metrics::format_double(1e3 * aqm::soft_target_from_pprime(curve, pr))
       << ',' << metrics::format_double(x) << ',' << metrics::format_double(1e3 * aqm::soft_target_from_p(curve, pr))
       << '\n';
  }
}

}  // namespace curvy::cli
