// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "vsgcl/dq.hpp"

namespace vsgcl {

// Current-reference limiting strategies.
enum class Strategy { none, angle_priority, d_priority, q_priority, adaptive };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::none: return "none";
    case Strategy::angle_priority: return "angle-priority";
    case Strategy::d_priority: return "d-priority";
    case Strategy::q_priority: return "q-priority";
    case Strategy::adaptive: return "adaptive";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "none") return Strategy::none;
  if (s == "angle" || s == "angle-priority") return Strategy::angle_priority;
  if (s == "d" || s == "d-priority") return Strategy::d_priority;
  if (s == "q" || s == "q-priority") return Strategy::q_priority;
  if (s == "adaptive") return Strategy::adaptive;
  return std::nullopt;
}

// The limiter laws below are the scalar reference implementations.  The batch
// kernels in kernels.hpp must stay bit-for-bit equal to these, so every
// operation is written in the exact shape the vector code uses:
//   * saturation test on the squared magnitude,
//   * min(a,b) as (a < b ? a : b)  — matches vector min semantics,
//   * sign selection as (x < 0 ? -v : v), which treats 0 and -0 as positive.

inline double min_sel(double a, double b) { return a < b ? a : b; }

// Scale the whole phasor onto the limit circle; the current angle (atan2)
// is preserved.  At or below the limit the input passes through unchanged.
inline DqPhasor limit_angle_priority(DqPhasor i, double i_max) {
  double mag2 = i.d * i.d + i.q * i.q;
  if (!(mag2 > i_max * i_max)) return i;
  double s = i_max / std::sqrt(mag2);
  return {i.d * s, i.q * s};
}

// Keep the d component (clamped to the limit), then fit the q component
// into the remaining headroom.
inline DqPhasor limit_d_priority(DqPhasor i, double i_max) {
  double mag2 = i.d * i.d + i.q * i.q;
  if (!(mag2 > i_max * i_max)) return i;
  double dmag = min_sel(std::fabs(i.d), i_max);
  double od = (i.d < 0.0) ? -dmag : dmag;
  double head = std::sqrt(i_max * i_max - dmag * dmag);
  double qmag = min_sel(std::fabs(i.q), head);
  double oq = (i.q < 0.0) ? -qmag : qmag;
  return {od, oq};
}

// Mirror image: q keeps its value, d takes whatever headroom is left.
inline DqPhasor limit_q_priority(DqPhasor i, double i_max) {
  double mag2 = i.d * i.d + i.q * i.q;
  if (!(mag2 > i_max * i_max)) return i;
  double qmag = min_sel(std::fabs(i.q), i_max);
  double oq = (i.q < 0.0) ? -qmag : qmag;
  double head = std::sqrt(i_max * i_max - qmag * qmag);
  double dmag = min_sel(std::fabs(i.d), head);
  double od = (i.d < 0.0) ? -dmag : dmag;
  return {od, oq};
}

// Angle-scheduled saturated reference: when the limit engages the output is
// placed at i_max * (cos a, -sin a) with a = delta/2 + phi, so the injected
// current tracks the rotor angle instead of the pre-limit reference.
inline DqPhasor limit_adaptive_trig(DqPhasor i, double i_max, double cos_sat,
                                    double sin_sat) {
  double mag2 = i.d * i.d + i.q * i.q;
  if (!(mag2 > i_max * i_max)) return i;
  return {i_max * cos_sat, -(i_max * sin_sat)};
}

inline DqPhasor limit_adaptive(DqPhasor i, double i_max, double delta,
                               double phi) {
  double a = 0.5 * delta + phi;
  return limit_adaptive_trig(i, i_max, std::cos(a), std::sin(a));
}

// Default schedule for the adaptive strategy's free angle.
inline double phi_half_delta(double delta) { return 0.5 * delta; }

// Strategy dispatcher used by curve evaluation and simulation.
inline DqPhasor apply_limiter(Strategy s, DqPhasor i, double i_max,
                              double delta) {
  switch (s) {
    case Strategy::none: return i;
    case Strategy::angle_priority: return limit_angle_priority(i, i_max);
    case Strategy::d_priority: return limit_d_priority(i, i_max);
    case Strategy::q_priority: return limit_q_priority(i, i_max);
    case Strategy::adaptive:
      return limit_adaptive(i, i_max, delta, phi_half_delta(delta));
  }
  return i;
}

}  // namespace vsgcl
