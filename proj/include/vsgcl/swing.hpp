// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "vsgcl/limiters.hpp"
#include "vsgcl/params.hpp"

namespace vsgcl {

struct SwingDeriv {
  double ddelta;  // d(delta)/dt, rad/s
  double domega;  // d(omega)/dt, rad/s^2
};

// Rotor dynamics.  delta integrates the speed deviation; the acceleration is
// the net per-unit power (mechanical minus electrical minus damping) scaled
// onto mechanical speed:
//   exact:   domega/dt = p_net * omega0^2 / (j * omega)
//   classic: domega/dt = p_net * omega0   / j
SwingDeriv swing_derivative(double delta, double omega, double p_e,
                            const SystemParams& p, InertiaMode mode);

// Electrical snapshot of one operating point after limiting.
struct ElectricalSnapshot {
  DqPhasor i_ref;
  DqPhasor i;
  double p_e;
  double q_e;
  double i_mag;
  bool saturated;  // limiter engaged (always false for Strategy::none)
};

ElectricalSnapshot electrical_point(Strategy s, double e_mag, double v_mag,
                                    double delta, const SystemParams& p);

// Pre-fault operating point: rotor angle at the stable equilibrium and the
// droop-consistent EMF, found by damped fixed-point iteration on E.
struct InitState {
  double delta0;
  double e0;
  double q_e0;
};

InitState init_equilibrium(Strategy s, const SystemParams& p);

enum class RunVerdict { stable, unstable };

inline const char* verdict_name(RunVerdict v) {
  return v == RunVerdict::stable ? "stable" : "unstable";
}

// One recorded sample of a simulated trajectory.
struct TrajectoryRow {
  double t;
  double delta;   // rad (unwrapped)
  double omega;   // rad/s
  double e;       // pu EMF magnitude in force during the step
  double v_g;     // pu grid magnitude at this instant
  double id_ref, iq_ref;
  double id, iq;  // after limiting
  double i_mag;
  double p_e, q_e;
  bool saturated;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  RunVerdict verdict = RunVerdict::stable;
  Strategy strategy = Strategy::none;
  InertiaMode mode = InertiaMode::exact;
  double dt = 0.0;
  int stride = 1;
  double delta_u = 0.0;    // post-fault runaway threshold used for the verdict
  double max_i_mag = 0.0;  // peak limited current over the run
  double max_delta = 0.0;  // peak rotor angle over the run
};

// Simulate the configured voltage-sag scenario from the pre-fault
// equilibrium.  Fixed-step RK4; the EMF is held constant inside each step and
// refreshed from the previous step's reactive power (droop with a one-step
// delay).  Throws NumericError if the state leaves the finite range.
Trajectory run_scenario(Strategy s, const SystemParams& p, const FaultSpec& f,
                        const RunOptions& opts);

// Same integrator started from an explicit rotor state (the droop is still
// initialized consistently at that state).  Used by convergence and energy
// diagnostics.
Trajectory run_scenario_from(Strategy s, const SystemParams& p,
                             const FaultSpec& f, const RunOptions& opts,
                             double delta_init, double omega_init);

}  // namespace vsgcl
