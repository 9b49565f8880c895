// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "vsgcl/dq.hpp"
#include "vsgcl/errors.hpp"

namespace vsgcl {

// Electrical operating point seen from the converter: internal EMF magnitude
// e_mag at angle delta ahead of the grid phasor of magnitude v_mag, connected
// through the virtual impedance r_v + j x_v.  All per-unit.
struct ElectricalState {
  double e_mag = 1.0;
  double v_mag = 1.0;
  double delta = 0.0;
  double r_v = 0.0;
  double x_v = 0.3;
};

// Grid (PCC) voltage resolved in the EMF-aligned d-q frame: the grid phasor
// lags the EMF by delta, so v = V * (cos delta, -sin delta).
inline DqPhasor pcc_voltage_dq(double v_mag, double delta) {
  return {v_mag * std::cos(delta), -(v_mag * std::sin(delta))};
}

// Unlimited current reference delivered by the virtual impedance:
//   i = (E - v) / (r_v + j x_v), expanded into real d-q components.
inline DqPhasor reference_current(const ElectricalState& s) {
  double den = s.r_v * s.r_v + s.x_v * s.x_v;
  if (!(den > 0.0)) {
    throw NumericError("reference_current: virtual impedance is zero");
  }
  double a = s.e_mag - s.v_mag * std::cos(s.delta);  // E - Re(v)
  double b = s.v_mag * std::sin(s.delta);            // -Im(v)
  double id = (s.r_v * a + s.x_v * b) / den;
  double iq = (s.r_v * b - s.x_v * a) / den;
  return {id, iq};
}

// Complex power s = v * conj(i) at the PCC, in components.
inline double active_power(DqPhasor v, DqPhasor i) {
  return v.d * i.d + v.q * i.q;
}

inline double reactive_power(DqPhasor v, DqPhasor i) {
  return v.q * i.d - v.d * i.q;
}

// Closed-form unsaturated PCC active power:
//   P = V * (x_v E sin delta + r_v (E cos delta - V)) / (r_v^2 + x_v^2).
// Algebraically identical to composing reference_current with active_power;
// at r_v = 0 it reduces to the classical E V sin(delta) / x_v.
inline double active_power_closed(const ElectricalState& s) {
  double den = s.r_v * s.r_v + s.x_v * s.x_v;
  if (!(den > 0.0)) {
    throw NumericError("active_power_closed: virtual impedance is zero");
  }
  double num = s.x_v * s.e_mag * std::sin(s.delta) +
               s.r_v * (s.e_mag * std::cos(s.delta) - s.v_mag);
  return s.v_mag * num / den;
}

// Reactive-droop voltage regulator: E = e_ref + k (q_ref - q_e), floored at
// zero so a huge reactive export can never drive the EMF negative.
inline double avr_voltage(double q_e, double e_ref, double k_avr,
                          double q_ref) {
  double e = e_ref + k_avr * (q_ref - q_e);
  return e > 0.0 ? e : 0.0;
}

}  // namespace vsgcl
