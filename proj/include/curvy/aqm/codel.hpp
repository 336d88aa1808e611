#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace curvy::aqm {

// Where the previous packet left the dequeue loop.
enum class CodelPhase : std::uint8_t { Fresh, AfterEntryDrop, AfterLoopDrop };

/// CoDel with a target that rises with the recent drop rate.
///
/// The drop rate is estimated over a sliding window of dequeued packets and
/// mapped linearly onto [base_target, base_target + span]. With span = 0 the
/// state machine is ordinary fixed-target CoDel.
struct CodelSoftState {
  double base_target = 0.005;  // seconds
  double span = 0.0;           // seconds
  double window = 1.0;         // seconds
  double interval = 0.1;       // seconds

  std::uint64_t drops_in_window = 0;
  std::uint64_t packets_in_window = 0;

  bool dropping = false;
  bool above_target = false;     // first_above_time is armed
  double first_above_time = 0.0;
  double drop_next = 0.0;
  std::uint32_t count = 0;
  std::uint32_t last_count = 0;
  CodelPhase phase = CodelPhase::Fresh;

  // (dequeue time, signalled) for every packet still inside the window
  std::deque<std::pair<double, bool>> history;

  void validate() const {
    if (!(base_target > 0.0) || !std::isfinite(base_target)) throw std::invalid_argument("target must be > 0");
    if (!(span >= 0.0) || !std::isfinite(span)) throw std::invalid_argument("span must be >= 0");
    if (!(window > 0.0) || !std::isfinite(window)) throw std::invalid_argument("window must be > 0");
    if (!(interval > 0.0) || !std::isfinite(interval)) throw std::invalid_argument("interval must be > 0");
  }
};

/// Windowed drop-rate estimate in [0,1].
inline double codel_drop_estimate(const CodelSoftState& s) noexcept {
  const std::uint64_t n = s.packets_in_window > 0 ? s.packets_in_window : 1;
  return static_cast<double>(s.drops_in_window) / static_cast<double>(n);
}

inline double codel_soft_target(const CodelSoftState& s) noexcept {
  return s.base_target + s.span * codel_drop_estimate(s);
}

/// Forget packets that left the window before `now`.
inline void codel_expire(CodelSoftState& s, double now) {
  const double horizon = now - s.window;
  while (!s.history.empty() && s.history.front().first < horizon) {
    if (s.history.front().second) --s.drops_in_window;
    --s.packets_in_window;
    s.history.pop_front();
  }
}

struct CodelStep {
  CodelSoftState state;
  bool drop = false;
  double target = 0.0;
};

namespace detail {
inline double codel_control_law(double t, double interval, std::uint32_t count) noexcept {
  return t + interval / std::sqrt(static_cast<double>(count));
}
}  // namespace detail

/// Decide for one packet at dequeue. Packets must be fed in dequeue order,
/// and a packet that follows a drop must be fed at the same `now` (the
/// dequeue keeps pulling until it has a packet to send). Take the state by
/// value and move it in: the window history is not cheap to copy.
///
/// A "drop" is the congestion signal; the caller turns it into a mark for
/// ECN-capable packets in classic ECN mode.
inline CodelStep codel_step(CodelSoftState state, double sojourn, double now) {
  codel_expire(state, now);
  const double target = codel_soft_target(state);

  bool ok_to_drop = false;
  if (sojourn < target) {
    state.above_target = false;
  } else if (!state.above_target) {
    state.above_target = true;
    state.first_above_time = now + state.interval;
  } else if (now >= state.first_above_time) {
    ok_to_drop = true;
  }

  bool drop = false;
  const auto phase = state.phase;
  state.phase = CodelPhase::Fresh;
  switch (phase) {
    case CodelPhase::AfterEntryDrop:
      // the packet pulled after the entry drop is always sent
      break;
    case CodelPhase::AfterLoopDrop:
      if (!ok_to_drop) {
        state.dropping = false;
        break;
      }
      state.drop_next = detail::codel_control_law(state.drop_next, state.interval, state.count);
      if (now >= state.drop_next) {
        drop = true;
        ++state.count;
        state.phase = CodelPhase::AfterLoopDrop;
      }
      break;
    case CodelPhase::Fresh:
      if (state.dropping) {
        if (!ok_to_drop) {
          state.dropping = false;
        } else if (now >= state.drop_next) {
          drop = true;
          ++state.count;
          state.phase = CodelPhase::AfterLoopDrop;
        }
      } else if (ok_to_drop) {
        drop = true;
        state.dropping = true;
        const std::uint32_t delta = state.count - state.last_count;
        state.count = (delta > 1 && now - state.drop_next < 16.0 * state.interval) ? delta : 1;
        state.last_count = state.count;
        state.drop_next = detail::codel_control_law(now, state.interval, state.count);
        state.phase = CodelPhase::AfterEntryDrop;
      }
      break;
  }

  state.history.emplace_back(now, drop);
  ++state.packets_in_window;
  if (drop) ++state.drops_in_window;

  return {std::move(state), drop, target};
}

/// A dequeue that found the queue empty.
inline void codel_idle(CodelSoftState& state, double now) {
  codel_expire(state, now);
  state.above_target = false;
  if (state.phase != CodelPhase::AfterEntryDrop) state.dropping = false;
  state.phase = CodelPhase::Fresh;
}

/// The signalled packet was ECN-marked and sent rather than dropped, so the
/// dequeue stops here instead of pulling the next packet.
inline void codel_mark_instead(CodelSoftState& state) {
  if (state.phase == CodelPhase::AfterLoopDrop) {
    state.drop_next = detail::codel_control_law(state.drop_next, state.interval, state.count);
  }
  state.phase = CodelPhase::Fresh;
}

}  // namespace curvy::aqm
