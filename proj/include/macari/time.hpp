#pragma once

#include <cmath>
#include <cstdint>

namespace macari {

/// Simulation time in integer microseconds. Every duration that enters the
/// engine is converted once at the boundary and stays exact thereafter.
using Micros = std::int64_t;

inline constexpr Micros kBackoffPeriodUs = 320;  // IEEE 802.15.4 unit backoff period
inline constexpr Micros kTurnaroundUs = 192;     // rx/tx turnaround, 12 symbols
inline constexpr Micros kAckWaitUs = 864;        // macAckWaitDuration, 54 symbols
inline constexpr Micros kLifsUs = 640;           // long inter-frame spacing (MPDU > 18 bytes)
inline constexpr Micros kSifsUs = 192;           // short inter-frame spacing

inline Micros seconds_to_us(double s) { return static_cast<Micros>(std::llround(s * 1e6)); }
inline double us_to_seconds(Micros us) { return static_cast<double>(us) * 1e-6; }

/// Round a duration up to a whole number of backoff periods.
inline constexpr Micros ceil_to_backoff(Micros us) {
  return (us + kBackoffPeriodUs - 1) / kBackoffPeriodUs * kBackoffPeriodUs;
}

/// Whole backoff periods elapsed since `origin` (floor).
inline constexpr std::int64_t backoff_periods_since(Micros t, Micros origin) {
  return (t - origin) / kBackoffPeriodUs;
}

/// First instant >= t that lies on the backoff-period grid anchored at `anchor`.
inline constexpr Micros align_to_backoff_grid(Micros t, Micros anchor) {
  Micros d = t - anchor;
  Micros r = d % kBackoffPeriodUs;
  return r == 0 ? t : t + (kBackoffPeriodUs - r);
}

}  // namespace macari
