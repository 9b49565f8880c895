// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vsgcl/errors.hpp"

namespace vsgcl {

// Per-unit base system.  Derived bases follow the usual single-phase
// conventions: I_base = S_base / V_base, Z_base = V_base^2 / S_base.
struct BaseQuantities {
  double s_base = 1000.0;     // VA
  double v_base = 380.0;      // V
  double omega_base = 314.0;  // rad/s

  double i_base() const { return s_base / v_base; }
  double z_base() const { return v_base * v_base / s_base; }
};

enum class Quantity { power, voltage, current, impedance, frequency };

inline double base_for(Quantity q, const BaseQuantities& b) {
  switch (q) {
    case Quantity::power: return b.s_base;
    case Quantity::voltage: return b.v_base;
    case Quantity::current: return b.i_base();
    case Quantity::impedance: return b.z_base();
    case Quantity::frequency: return b.omega_base;
  }
  throw Error("base_for: unreachable quantity tag");
}

inline double to_per_unit(double si, Quantity q, const BaseQuantities& b) {
  return si / base_for(q, b);
}

inline double from_per_unit(double pu, Quantity q, const BaseQuantities& b) {
  return pu * base_for(q, b);
}

}  // namespace vsgcl
