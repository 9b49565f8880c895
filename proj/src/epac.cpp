// SPDX-License-Identifier: Apache-2.0

#include "vsgcl/epac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "vsgcl/errors.hpp"
#include "vsgcl/numerics.hpp"
#include "vsgcl/swing.hpp"

namespace vsgcl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMarginalBand = 1e-6;  // pu*rad

struct Crossing {
  double delta;
  bool rising;
};

// All transversal crossings of P(delta) = p_m on [lo, hi], classified by the
// sign of P - p_m on either side (works across jump discontinuities too).
std::vector<Crossing> scan_crossings(const PDeltaCurve& c, double p_m,
                                     double lo, double hi) {
  auto g = [&](double d) { return c.eval(d) - p_m; };
  std::vector<Crossing> out;
  for (auto [a, b] : sign_change_brackets(g, lo, hi, 2048)) {
    double r = bisect(g, a, b, 1e-10);
    double h = 1e-6;
    double gl = g(std::max(lo, r - h));
    double gr = g(std::min(hi, r + h));
    if (gl < 0.0 && gr > 0.0) {
      out.push_back({r, true});
    } else if (gl > 0.0 && gr < 0.0) {
      out.push_back({r, false});
    }  // tangency: skip
  }
  return out;
}

}  // namespace

Equilibria solve_equilibria(const PDeltaCurve& c, double p_m) {
  auto crossings = scan_crossings(c, p_m, 0.0, kPi);
  const Crossing* first_rising = nullptr;
  const Crossing* last_falling = nullptr;
  for (const auto& x : crossings) {
    if (x.rising && first_rising == nullptr) first_rising = &x;
    if (!x.rising) last_falling = &x;
  }
  if (first_rising == nullptr) {
    throw NumericError(
        "solve_equilibria: power curve does not rise through the mechanical "
        "power on [0, pi] (p_m = " +
        std::to_string(p_m) + ")");
  }
  Equilibria eq;
  eq.delta_s = first_rising->delta;
  if (last_falling != nullptr) {
    eq.delta_u = last_falling->delta;
    return eq;
  }
  // Saturated branch still above p_m at pi: the exit crossing sits beyond.
  for (const auto& x : scan_crossings(c, p_m, kPi, 2.0 * kPi)) {
    if (!x.rising) {
      eq.delta_u = x.delta;
      return eq;
    }
  }
  throw NumericError(
      "solve_equilibria: no falling crossing of p_m on [0, 2*pi)");
}

double runaway_angle(const PDeltaCurve& c, double p_m) {
  return solve_equilibria(c, p_m).delta_u;
}

Areas equal_areas(const EpacScenario& s, double delta_c) {
  double d0 = solve_equilibria(s.pre, s.p_m).delta_s;
  double du = runaway_angle(s.post, s.p_m);
  // Area accrues only between the equilibria: clearing beyond delta_u leaves
  // no decelerating area (decisively unstable), clearing before delta_0
  // leaves no accelerating area (trivially stable).
  double dc = std::clamp(delta_c, d0, du);
  auto acc = [&](double d) { return s.p_m - s.fault.eval(d); };
  auto dec = [&](double d) { return s.post.eval(d) - s.p_m; };
  Areas a;
  a.a_acc = integrate_with_breakpoints(acc, d0, dc, s.fault.boundaries, 1e-8);
  a.a_dec = integrate_with_breakpoints(dec, dc, du, s.post.boundaries, 1e-8);
  return a;
}

const char* verdict_name(EpacVerdict v) {
  switch (v) {
    case EpacVerdict::stable: return "stable";
    case EpacVerdict::marginal: return "marginal";
    case EpacVerdict::unstable: return "unstable";
  }
  return "?";
}

EpacResult epac_verdict(const EpacScenario& s, double delta_c) {
  EpacResult r;
  r.delta_0 = solve_equilibria(s.pre, s.p_m).delta_s;
  r.delta_u = runaway_angle(s.post, s.p_m);
  r.areas = equal_areas(s, delta_c);
  r.margin = r.areas.a_dec - r.areas.a_acc;
  if (std::fabs(r.margin) <= kMarginalBand) {
    r.verdict = EpacVerdict::marginal;
  } else {
    r.verdict = r.margin > 0.0 ? EpacVerdict::stable : EpacVerdict::unstable;
  }
  return r;
}

double critical_clearing_angle(const EpacScenario& s) {
  double d0 = solve_equilibria(s.pre, s.p_m).delta_s;
  double du = runaway_angle(s.post, s.p_m);
  auto imbalance = [&](double dc) {
    Areas a = equal_areas(s, dc);
    return a.a_acc - a.a_dec;  // rises with dc; root = balance point
  };
  double lo = d0 + 1e-9;
  double hi = du - 1e-9;
  if (!(lo < hi)) {
    throw NumericError("critical_clearing_angle: degenerate window");
  }
  double flo = imbalance(lo);
  double fhi = imbalance(hi);
  if (flo > 0.0 || fhi < 0.0) {
    throw NumericError(
        "critical_clearing_angle: no equal-area balance point in (delta_0, "
        "delta_u); the scenario is " +
        std::string(flo > 0.0 ? "unstable" : "stable") +
        " for every clearing angle");
  }
  return bisect(imbalance, lo, hi, 1e-8);
}

namespace {

struct PhasePoint {
  double delta;
  double omega;
};

// One RK4 step of the rotor on a frozen power curve (classic model, no
// damping): the canonical equal-area companion dynamics.
PhasePoint rk4_frozen(const PDeltaCurve& c, const SystemParams& p,
                      double p_m, PhasePoint u, double dt) {
  SystemParams q = p;
  q.d_damping = 0.0;
  q.p_m = p_m;
  auto f = [&](PhasePoint w) {
    SwingDeriv d = swing_derivative(w.delta, w.omega, c.eval(w.delta), q,
                                    InertiaMode::classic);
    return PhasePoint{d.ddelta, d.domega};
  };
  PhasePoint k1 = f(u);
  PhasePoint k2 = f({u.delta + 0.5 * dt * k1.delta, u.omega + 0.5 * dt * k1.omega});
  PhasePoint k3 = f({u.delta + 0.5 * dt * k2.delta, u.omega + 0.5 * dt * k2.omega});
  PhasePoint k4 = f({u.delta + dt * k3.delta, u.omega + dt * k3.omega});
  return {u.delta + dt / 6.0 *
                        (k1.delta + 2.0 * k2.delta + 2.0 * k3.delta + k4.delta),
          u.omega + dt / 6.0 *
                        (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega)};
}

}  // namespace

double critical_clearing_time(const EpacScenario& s, const SystemParams& p,
                              double dt) {
  double dcc = critical_clearing_angle(s);
  double d0 = solve_equilibria(s.pre, s.p_m).delta_s;
  PhasePoint u{d0, p.omega0()};
  if (u.delta >= dcc) return 0.0;
  const long max_steps = static_cast<long>(120.0 / dt);
  for (long i = 0; i < max_steps; ++i) {
    double t0 = static_cast<double>(i) * dt;
    PhasePoint v = rk4_frozen(s.fault, p, s.p_m, u, dt);
    if (v.delta >= dcc) {
      return hermite_crossing(t0, u.delta, u.omega - p.omega0(), t0 + dt,
                              v.delta, v.omega - p.omega0(), dcc, 1e-6);
    }
    u = v;
  }
  throw NumericError(
      "critical_clearing_time: rotor never reaches the critical angle during "
      "the fault");
}

double fault_angle_at(const EpacScenario& s, const SystemParams& p,
                      double duration, double dt) {
  double d0 = solve_equilibria(s.pre, s.p_m).delta_s;
  PhasePoint u{d0, p.omega0()};
  const long n = std::lround(duration / dt);
  for (long i = 0; i < n; ++i) {
    u = rk4_frozen(s.fault, p, s.p_m, u, dt);
  }
  double rem = duration - static_cast<double>(n) * dt;
  if (std::fabs(rem) > 1e-12) {
    u = rk4_frozen(s.fault, p, s.p_m, u, rem);
  }
  return u.delta;
}

bool clearing_angle_crosscheck(const EpacScenario& s, const SystemParams& p,
                               double delta_c, double dt, double t_post) {
  double d0 = solve_equilibria(s.pre, s.p_m).delta_s;
  double du = runaway_angle(s.post, s.p_m);
  PhasePoint u{d0, p.omega0()};
  // Phase 1: accelerate on the fault curve until the clearing angle.
  const long max_steps = static_cast<long>(120.0 / dt);
  long i = 0;
  while (u.delta < delta_c) {
    if (++i > max_steps) {
      throw NumericError(
          "clearing_angle_crosscheck: clearing angle unreachable during "
          "fault");
    }
    u = rk4_frozen(s.fault, p, s.p_m, u, dt);
  }
  // Phase 2: ride the post-fault curve; without damping, crossing the
  // runaway angle while still fast is conclusive.
  const long post_steps = static_cast<long>(t_post / dt);
  for (long k = 0; k < post_steps; ++k) {
    u = rk4_frozen(s.post, p, s.p_m, u, dt);
    if (u.delta > du && u.omega > p.omega0()) return false;
  }
  return true;
}

}  // namespace vsgcl
