// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "vsgcl/errors.hpp"
#include "vsgcl/per_unit.hpp"

namespace vsgcl {

// Rotor model variants.
//   exact:   d(omega)/dt = p_acc * omega0^2 / (J * omega)   (torque balance)
//   classic: d(omega)/dt = p_acc * omega0   / J              (power balance,
//            small-deviation form; conserves the quadratic rotor energy)
enum class InertiaMode { exact, classic };

// Electrical and mechanical parameters, all stored in per-unit except the
// angular quantities (rad/s) and the inertia/damping constants noted below.
//
// Model conventions:
//   * j_inertia is the per-unit inertia constant in seconds (equal to 2H).
//     With j = 3 the rotor accelerates at omega0/j ~ 104.7 rad/s^2 per
//     per-unit of net power.
//   * d_damping is per-unit damping power per rad/s of speed deviation.
//     Config files give the damping input on the volt-ampere scale; the
//     loader divides by 2*S_base (see config.cpp) to land here.
struct SystemParams {
  BaseQuantities base{};

  double p_m = 1.0;         // mechanical (reference) power, pu
  double q_ref = 0.0;       // reactive power setpoint, pu
  double e_ref = 1.0;       // EMF reference magnitude, pu
  double k_avr = 0.05;      // voltage droop gain, pu V per pu VAr
  double j_inertia = 3.0;   // per-unit inertia constant (2H), s
  double d_damping = 0.05;  // pu damping power per rad/s speed deviation
  double r_v = 0.0;         // virtual resistance, pu
  double x_v = 0.3;         // virtual reactance, pu
  double i_max = 2.4;       // current limit, pu
  double v_grid = 1.0;      // nominal grid voltage magnitude, pu

  // Hardware constants carried through from config; the phasor model does
  // not consume them.
  double l_f = 0.0;
  double c_f = 0.0;
  double l_g = 0.0;
  double u_dc = 0.0;

  double omega0() const { return base.omega_base; }
};

// Voltage-sag event: the grid magnitude drops to v_retained on
// [t_fault, t_clear) and recovers at t_clear (half-open interval).
struct FaultSpec {
  double t_fault = 0.5;     // s
  double t_clear = 0.8;     // s
  double v_retained = 0.2;  // retained grid voltage during the sag, pu
  double t_end = 3.0;       // simulation horizon, s
};

struct RunOptions {
  double dt = 2e-4;                        // fixed integrator step, s
  InertiaMode mode = InertiaMode::exact;   // rotor model variant
  int stride = 5;                          // record every stride-th step
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config invariant violated: " + what);
}
}  // namespace detail

inline void validate(const SystemParams& p) {
  using detail::require;
  require(p.base.s_base > 0.0, "s_base > 0");
  require(p.base.v_base > 0.0, "v_base > 0");
  require(p.base.omega_base > 0.0, "omega0 > 0");
  require(p.p_m > 0.0, "p_ref > 0");
  require(p.e_ref > 0.0, "e_ref > 0");
  require(p.v_grid > 0.0, "v_grid > 0");
  require(p.k_avr >= 0.0, "k >= 0");
  require(p.j_inertia > 0.0, "j > 0");
  require(p.d_damping >= 0.0, "d >= 0");
  require(p.r_v >= 0.0, "r_v >= 0");
  require(p.r_v * p.r_v + p.x_v * p.x_v > 0.0,
          "virtual impedance must be nonzero (r_v^2 + x_v^2 > 0)");
  require(p.i_max > 0.0, "i_max > 0");
  require(p.l_f >= 0.0, "l_f >= 0");
  require(p.c_f >= 0.0, "c_f >= 0");
  require(p.l_g >= 0.0, "l_g >= 0");
  require(p.u_dc >= 0.0, "u_dc >= 0");
}

inline void validate(const FaultSpec& f) {
  using detail::require;
  require(f.t_fault >= 0.0, "t_fault >= 0");
  require(f.t_fault < f.t_clear, "t_fault < t_clear");
  require(f.t_clear <= f.t_end, "t_clear <= t_end");
  require(f.v_retained >= 0.0, "v_retained >= 0");
}

inline void validate(const RunOptions& r) {
  using detail::require;
  require(r.dt > 0.0, "dt > 0");
  require(r.stride >= 1, "stride >= 1");
}

inline const char* mode_name(InertiaMode m) {
  return m == InertiaMode::exact ? "exact" : "classic";
}

}  // namespace vsgcl
