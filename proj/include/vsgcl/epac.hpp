// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vsgcl/params.hpp"
#include "vsgcl/pdelta.hpp"

namespace vsgcl {

// Equal-area transient-stability assessment on a pre-fault / during-fault /
// post-fault triple of power curves at fixed mechanical power.
struct EpacScenario {
  PDeltaCurve pre;
  PDeltaCurve fault;
  PDeltaCurve post;
  double p_m = 1.0;
};

struct Equilibria {
  double delta_s;  // stable equilibrium: P crosses p_m rising
  double delta_u;  // unstable equilibrium: P crosses p_m falling
};

// Equilibria of one curve.  delta_s is the first rising crossing on [0, pi];
// delta_u is the last falling crossing there, or — for curves whose saturated
// branch is still above p_m at pi — the first falling crossing in (pi, 2*pi).
// Throws NumericError when either crossing is missing.
Equilibria solve_equilibria(const PDeltaCurve& c, double p_m);

// Angle past which the post-fault rotor cannot be pulled back; alias for
// solve_equilibria(c, p_m).delta_u.
double runaway_angle(const PDeltaCurve& c, double p_m);

struct Areas {
  double a_acc;  // integral of (p_m - P_fault) over [delta_0, delta_c]
  double a_dec;  // integral of (P_post - p_m) over [delta_c, delta_u]
};

// Signed areas; regime boundaries of each curve split the quadrature panels.
// The clearing angle is clamped into [delta_0, delta_u]: clearing past
// delta_u leaves zero decelerating area, clearing before delta_0 zero
// accelerating area.
Areas equal_areas(const EpacScenario& s, double delta_c);

enum class EpacVerdict { stable, marginal, unstable };

const char* verdict_name(EpacVerdict v);

struct EpacResult {
  Areas areas;
  double margin;        // a_dec - a_acc
  EpacVerdict verdict;  // marginal when |margin| <= 1e-6
  double delta_0;
  double delta_u;
};

EpacResult epac_verdict(const EpacScenario& s, double delta_c);

// Critical clearing angle: the delta_c at which the areas balance.
// Bisection to 1e-8 rad; throws NumericError when no balance point exists
// inside (delta_0, delta_u).
double critical_clearing_angle(const EpacScenario& s);

// Critical clearing time: integrate the during-fault swing (classic rotor
// model, no damping, frozen EMF) from the pre-fault equilibrium until delta
// reaches the critical clearing angle; the crossing is located inside the
// bracketing step to 1e-6 s.
double critical_clearing_time(const EpacScenario& s, const SystemParams& p,
                              double dt = 2e-4);

// Time-domain cross-check of the equal-area verdict: run the same frozen
// curves through the swing integrator, switching from the fault curve to the
// post curve when delta first reaches delta_c, then classify the post-fault
// motion.  true = stable.
bool clearing_angle_crosscheck(const EpacScenario& s, const SystemParams& p,
                               double delta_c, double dt = 2e-4,
                               double t_post = 3.0);

// Rotor angle after riding the during-fault curve for `duration` seconds
// from the pre-fault equilibrium (same frozen dynamics as above).  This is
// the natural default clearing angle for a fault cleared by time.
double fault_angle_at(const EpacScenario& s, const SystemParams& p,
                      double duration, double dt = 2e-4);

}  // namespace vsgcl
