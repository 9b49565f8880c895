// SPDX-License-Identifier: Apache-2.0

#include "vsgcl/swing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsgcl/epac.hpp"
#include "vsgcl/errors.hpp"
#include "vsgcl/log.hpp"
#include "vsgcl/pdelta.hpp"
#include "vsgcl/phasor.hpp"

namespace vsgcl {

SwingDeriv swing_derivative(double /*delta*/, double omega, double p_e,
                            const SystemParams& p, InertiaMode mode) {
  // The angle enters only through p_e, which the caller evaluates.
  double w0 = p.omega0();
  double p_net = p.p_m - p_e - p.d_damping * (omega - w0);
  double speed = (mode == InertiaMode::exact) ? omega : w0;
  return {omega - w0, p_net * w0 * w0 / (p.j_inertia * speed)};
}

ElectricalSnapshot electrical_point(Strategy s, double e_mag, double v_mag,
                                    double delta, const SystemParams& p) {
  ElectricalSnapshot out;
  out.i_ref = reference_current({e_mag, v_mag, delta, p.r_v, p.x_v});
  out.saturated =
      s != Strategy::none && magnitude_sq(out.i_ref) > p.i_max * p.i_max;
  out.i = apply_limiter(s, out.i_ref, p.i_max, delta);
  DqPhasor v = pcc_voltage_dq(v_mag, delta);
  out.p_e = active_power(v, out.i);
  out.q_e = reactive_power(v, out.i);
  out.i_mag = magnitude(out.i);
  return out;
}

InitState init_equilibrium(Strategy s, const SystemParams& p) {
  double e = p.e_ref;
  double delta0 = 0.0;
  double q_e = 0.0;
  // Damped fixed-point iteration: re-solve the equilibrium angle for the
  // current EMF, read the reactive power there, update E through the droop.
  constexpr int kMaxIter = 10000;
  constexpr double kRelax = 0.5;
  constexpr double kTol = 1e-10;
  for (int it = 0; it < kMaxIter; ++it) {
    PDeltaCurve curve = make_curve(s, p, p.v_grid, e);
    delta0 = solve_equilibria(curve, p.p_m).delta_s;
    ElectricalSnapshot snap = electrical_point(s, e, p.v_grid, delta0, p);
    q_e = snap.q_e;
    double target = avr_voltage(q_e, p.e_ref, p.k_avr, p.q_ref);
    double next = e + kRelax * (target - e);
    double err = std::fabs(next - e);
    e = next;
    if (err < kTol) {
      // Re-derive the angle and reactive power at the final EMF so the
      // returned triple is self-consistent.
      PDeltaCurve final_curve = make_curve(s, p, p.v_grid, e);
      delta0 = solve_equilibria(final_curve, p.p_m).delta_s;
      q_e = electrical_point(s, e, p.v_grid, delta0, p).q_e;
      return {delta0, e, q_e};
    }
  }
  throw NumericError(
      "init_equilibrium: droop fixed point did not converge in 10000 "
      "iterations");
}

namespace {

double grid_voltage(const FaultSpec& f, const SystemParams& p, double t) {
  // Half-open sag window [t_fault, t_clear).
  return (t >= f.t_fault && t < f.t_clear) ? f.v_retained : p.v_grid;
}

struct StepResult {
  double delta;
  double omega;
};

// One RK4 step over [t, t+dt] with the EMF frozen at e_step; the grid
// magnitude is sampled at each stage time, so the sag switches exactly at
// the configured instants (they land on step edges for commensurate dt).
StepResult rk4_step(Strategy s, const SystemParams& p, const FaultSpec& f,
                    InertiaMode mode, double e_step, double t, double dt,
                    double delta, double omega) {
  auto deriv = [&](double ti, double d, double w) {
    double v = grid_voltage(f, p, ti);
    ElectricalSnapshot snap = electrical_point(s, e_step, v, d, p);
    return swing_derivative(d, w, snap.p_e, p, mode);
  };
  SwingDeriv k1 = deriv(t, delta, omega);
  SwingDeriv k2 = deriv(t + 0.5 * dt, delta + 0.5 * dt * k1.ddelta,
                        omega + 0.5 * dt * k1.domega);
  SwingDeriv k3 = deriv(t + 0.5 * dt, delta + 0.5 * dt * k2.ddelta,
                        omega + 0.5 * dt * k2.domega);
  SwingDeriv k4 =
      deriv(t + dt, delta + dt * k3.ddelta, omega + dt * k3.domega);
  return {delta + dt / 6.0 *
                      (k1.ddelta + 2.0 * k2.ddelta + 2.0 * k3.ddelta +
                       k4.ddelta),
          omega + dt / 6.0 *
                      (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega +
                       k4.domega)};
}

Trajectory integrate(Strategy s, const SystemParams& p, const FaultSpec& f,
                     const RunOptions& opts, double delta_init,
                     double omega_init, double e_init, double q_e_init) {
  validate(p);
  validate(f);
  validate(opts);

  Trajectory traj;
  traj.strategy = s;
  traj.mode = opts.mode;
  traj.dt = opts.dt;
  traj.stride = opts.stride;

  // Runaway threshold from the post-fault curve with the EMF at its
  // reference value (the droop keeps E near e_ref once the sag clears).
  traj.delta_u =
      runaway_angle(make_curve(s, p, p.v_grid, p.e_ref), p.p_m);

  const double w0 = p.omega0();
  const double dt = opts.dt;
  const long n_steps = std::lround(f.t_end / dt);

  double delta = delta_init;
  double omega = omega_init;
  double q_e_prev = q_e_init;
  double e_step = e_init;
  bool runaway = false;

  traj.rows.reserve(static_cast<std::size_t>(n_steps / opts.stride) + 2);
  {
    ElectricalSnapshot snap =
        electrical_point(s, e_step, grid_voltage(f, p, 0.0), delta, p);
    traj.rows.push_back({0.0, delta, omega, e_step, grid_voltage(f, p, 0.0),
                         snap.i_ref.d, snap.i_ref.q, snap.i.d, snap.i.q,
                         snap.i_mag, snap.p_e, snap.q_e, snap.saturated});
    traj.max_i_mag = snap.i_mag;
    traj.max_delta = delta;
  }

  for (long i = 0; i < n_steps; ++i) {
    double t = static_cast<double>(i) * dt;
    // Droop with a one-step delay: E for this step comes from the reactive
    // power measured at the end of the previous step.
    e_step = avr_voltage(q_e_prev, p.e_ref, p.k_avr, p.q_ref);
    StepResult next = rk4_step(s, p, f, opts.mode, e_step, t, dt, delta, omega);
    delta = next.delta;
    omega = next.omega;
    if (!std::isfinite(delta) || !std::isfinite(omega)) {
      throw NumericError("simulation diverged: non-finite rotor state at t=" +
                         std::to_string(t + dt) + " s");
    }
    double t1 = static_cast<double>(i + 1) * dt;
    ElectricalSnapshot snap =
        electrical_point(s, e_step, grid_voltage(f, p, t1), delta, p);
    q_e_prev = snap.q_e;
    if (snap.i_mag > traj.max_i_mag) traj.max_i_mag = snap.i_mag;
    if (delta > traj.max_delta) traj.max_delta = delta;
    if (delta > traj.delta_u + 2.0 * std::numbers::pi) runaway = true;
    if ((i + 1) % opts.stride == 0 || i + 1 == n_steps) {
      traj.rows.push_back({t1, delta, omega, e_step, grid_voltage(f, p, t1),
                           snap.i_ref.d, snap.i_ref.q, snap.i.d, snap.i.q,
                           snap.i_mag, snap.p_e, snap.q_e, snap.saturated});
    }
  }

  // Verdict.  A rotor that ran a full turn past the post-fault unstable
  // equilibrium is gone; so is one sitting beyond it and still accelerating
  // at the horizon.  With damping present, anything that has not settled
  // near synchronous speed by the horizon is likewise counted unstable
  // (undamped runs oscillate forever by design and are judged by angle only).
  if (runaway) {
    traj.verdict = RunVerdict::unstable;
  } else if (delta > traj.delta_u && omega > w0) {
    traj.verdict = RunVerdict::unstable;
  } else if (p.d_damping > 0.0 && std::fabs(omega - w0) >= 0.5) {
    traj.verdict = RunVerdict::unstable;
  } else {
    traj.verdict = RunVerdict::stable;
  }
  if (log_enabled(LogLevel::info)) {
    log_info(std::string("run ") + strategy_name(s) + ": " +
             verdict_name(traj.verdict) +
             ", peak |i|=" + std::to_string(traj.max_i_mag) +
             " pu, peak delta=" + std::to_string(traj.max_delta) + " rad");
  }
  return traj;
}

}  // namespace

Trajectory run_scenario(Strategy s, const SystemParams& p, const FaultSpec& f,
                        const RunOptions& opts) {
  InitState ini = init_equilibrium(s, p);
  return integrate(s, p, f, opts, ini.delta0, p.omega0(), ini.e0, ini.q_e0);
}

Trajectory run_scenario_from(Strategy s, const SystemParams& p,
                             const FaultSpec& f, const RunOptions& opts,
                             double delta_init, double omega_init) {
  // Initialize the droop consistently at the given state.
  ElectricalSnapshot snap =
      electrical_point(s, p.e_ref, p.v_grid, delta_init, p);
  double e0 = avr_voltage(snap.q_e, p.e_ref, p.k_avr, p.q_ref);
  return integrate(s, p, f, opts, delta_init, omega_init, e0, snap.q_e);
}

}  // namespace vsgcl
