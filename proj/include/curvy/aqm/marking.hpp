#pragma once

#include <string_view>

#include "curvy/aqm/probability.hpp"
#include "curvy/random.hpp"

namespace curvy::aqm {

enum class MarkingMode { Drop, ClassicEcnMark };

enum class Decision { Forward, Drop, Mark };

constexpr std::string_view to_string(MarkingMode m) noexcept {
  return m == MarkingMode::Drop ? "drop" : "ecn";
}

constexpr std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Forward: return "forward";
    case Decision::Drop: return "drop";
    case Decision::Mark: return "mark";
  }
  return "?";
}

/// Signal decision for one packet. Exactly one uniform draw is consumed per
/// call whatever the mode or outcome, so Drop and ClassicEcnMark runs see the
/// same decision stream. Classic ECN marks with the same probability a drop
/// would be applied; non-ECT packets are dropped instead.
inline Decision decide(Probability p, MarkingMode mode, bool ecn_capable, Pcg32& rng) noexcept {
  const double u = rng.uniform();
  if (!(u < p.value())) return Decision::Forward;
  if (mode == MarkingMode::ClassicEcnMark && ecn_capable) return Decision::Mark;
  return Decision::Drop;
}

}  // namespace curvy::aqm
