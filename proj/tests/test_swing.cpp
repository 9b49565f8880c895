// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include <vsgcl/epac.hpp>
#include <vsgcl/errors.hpp>
#include <vsgcl/phasor.hpp>
#include <vsgcl/swing.hpp>

using namespace vsgcl;

namespace {

// No-sag fault spec: the "retained" voltage equals the nominal grid, so the
// event window changes nothing.
FaultSpec no_fault() { return {0.5, 0.8, 1.0, 2.0}; }

}  // namespace

TEST_SUITE("swing") {

TEST_CASE("rotor acceleration scales net power onto the inertia") {
  SystemParams p;  // omega0 = 314, j = 3, d = 0.05 pu per rad/s
  const double w0 = p.omega0();
  // At synchronous speed with 1 pu net power: omega0 / j in classic form,
  // identical in exact form because omega = omega0.
  SwingDeriv cl = swing_derivative(0.3, w0, 0.0, p, InertiaMode::classic);
  CHECK(cl.ddelta == 0.0);
  CHECK(cl.domega == doctest::Approx(w0 / 3.0).epsilon(1e-14));
  SwingDeriv ex = swing_derivative(0.3, w0, 0.0, p, InertiaMode::exact);
  CHECK(ex.domega == doctest::Approx(cl.domega).epsilon(1e-14));
  // Off synchronous speed the exact form divides by the true speed and the
  // damping term bites.
  const double w = w0 + 6.0;
  const double pnet = 1.0 - 0.4 - 0.05 * 6.0;
  SwingDeriv off = swing_derivative(0.3, w, 0.4, p, InertiaMode::exact);
  CHECK(off.ddelta == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(off.domega ==
        doctest::Approx(pnet * w0 * w0 / (3.0 * w)).epsilon(1e-13));
  SwingDeriv offc = swing_derivative(0.3, w, 0.4, p, InertiaMode::classic);
  CHECK(offc.domega == doctest::Approx(pnet * w0 / 3.0).epsilon(1e-13));
}

TEST_CASE("initial operating point is droop- and power-consistent") {
  SystemParams p;
  for (Strategy s : {Strategy::none, Strategy::q_priority,
                     Strategy::adaptive}) {
    const InitState ini = init_equilibrium(s, p);
    const ElectricalSnapshot snap =
        electrical_point(s, ini.e0, p.v_grid, ini.delta0, p);
    CHECK(snap.p_e == doctest::Approx(p.p_m).epsilon(1e-7));
    CHECK(avr_voltage(snap.q_e, p.e_ref, p.k_avr, p.q_ref) ==
          doctest::Approx(ini.e0).epsilon(1e-8));
    CHECK_FALSE(snap.saturated);  // the machine starts inside the limit
  }
}

TEST_CASE("without a disturbance the trajectory holds its equilibrium") {
  SystemParams p;
  RunOptions opts;
  const Trajectory traj =
      run_scenario(Strategy::q_priority, p, no_fault(), opts);
  REQUIRE(!traj.rows.empty());
  const double d0 = traj.rows.front().delta;
  for (const TrajectoryRow& r : traj.rows) {
    CHECK(std::fabs(r.delta - d0) <= 1e-6);
    CHECK(std::fabs(r.omega - p.omega0()) <= 1e-4);
  }
  CHECK(traj.verdict == RunVerdict::stable);
}

TEST_CASE("identical inputs give bitwise-identical trajectories") {
  SystemParams p;
  FaultSpec f;  // standard sag
  RunOptions opts;
  const Trajectory a = run_scenario(Strategy::adaptive, p, f, opts);
  const Trajectory b = run_scenario(Strategy::adaptive, p, f, opts);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].t == b.rows[k].t);
    CHECK(a.rows[k].delta == b.rows[k].delta);
    CHECK(a.rows[k].omega == b.rows[k].omega);
    CHECK(a.rows[k].e == b.rows[k].e);
    CHECK(a.rows[k].p_e == b.rows[k].p_e);
    CHECK(a.rows[k].q_e == b.rows[k].q_e);
    CHECK(a.rows[k].i_mag == b.rows[k].i_mag);
  }
  CHECK(a.verdict == b.verdict);
  CHECK(a.max_i_mag == b.max_i_mag);
}

TEST_CASE("row bookkeeping: time grid, initial row, stride, final row") {
  SystemParams p;
  FaultSpec f{0.5, 0.8, 0.2, 1.0};
  RunOptions opts;  // dt = 2e-4, stride 5
  const Trajectory traj = run_scenario(Strategy::adaptive, p, f, opts);
  // 5000 steps / 5 + the initial row.
  REQUIRE(traj.rows.size() == 1001);
  CHECK(traj.rows.front().t == 0.0);
  CHECK(traj.rows.back().t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traj.rows[1].t == doctest::Approx(5 * 2e-4).epsilon(1e-12));
  // The sag window is half-open: at t_clear the grid is already back.
  for (const TrajectoryRow& r : traj.rows) {
    if (r.t >= 0.5 && r.t < 0.8) {
      CHECK(r.v_g == 0.2);
    } else {
      CHECK(r.v_g == 1.0);
    }
  }
}

TEST_CASE("droop updates the EMF from the previous step's reactive power") {
  SystemParams p;
  FaultSpec f{0.1, 0.4, 0.2, 0.5};
  RunOptions opts;
  opts.stride = 1;
  const Trajectory traj = run_scenario(Strategy::q_priority, p, f, opts);
  for (std::size_t k = 0; k + 1 < traj.rows.size(); ++k) {
    const double expect =
        avr_voltage(traj.rows[k].q_e, p.e_ref, p.k_avr, p.q_ref);
    CHECK(traj.rows[k + 1].e == expect);
  }
}

TEST_CASE("the nominal sag separates the strategies") {
  SystemParams p;
  FaultSpec f;  // 0.5 .. 0.8 s at 0.2 pu, horizon 3 s
  RunOptions opts;
  const Trajectory q = run_scenario(Strategy::q_priority, p, f, opts);
  CHECK(q.verdict == RunVerdict::unstable);
  CHECK(q.max_delta > q.delta_u + 6.28);  // ran away by at least a turn
  const Trajectory a = run_scenario(Strategy::adaptive, p, f, opts);
  CHECK(a.verdict == RunVerdict::stable);
  CHECK(a.max_delta < a.delta_u);
  CHECK(a.max_i_mag <= 2.4 * (1.0 + 1e-9));
}

TEST_CASE("undamped runs are judged by angle, not by residual swing") {
  SystemParams p;
  p.d_damping = 0.0;
  p.k_avr = 0.0;
  FaultSpec f{0.5, 0.55, 0.9, 2.0};  // brief shallow dip
  RunOptions opts;
  opts.mode = InertiaMode::classic;
  const Trajectory traj = run_scenario(Strategy::none, p, f, opts);
  CHECK(traj.verdict == RunVerdict::stable);
  // It is genuinely still swinging near the horizon (peak speed deviation
  // over the final quarter of the run, which spans more than a half cycle).
  double residual = 0.0;
  for (std::size_t k = traj.rows.size() * 3 / 4; k < traj.rows.size(); ++k) {
    residual = std::max(residual,
                        std::fabs(traj.rows[k].omega - p.omega0()));
  }
  CHECK(residual > 1e-3);
}

TEST_CASE("non-finite states raise instead of propagating") {
  SystemParams p;
  p.p_m = 1e308;
  p.j_inertia = 1e-308;
  p.d_damping = 0.0;
  RunOptions opts;
  CHECK_THROWS_AS(run_scenario_from(Strategy::none, p, no_fault(), opts,
                                    0.3, p.omega0()),
                  NumericError);
}

TEST_CASE("exact and classic rotor models drift apart during the swing") {
  SystemParams p;
  FaultSpec f{0.5, 0.6, 0.2, 1.0};
  RunOptions opts;
  const Trajectory ex = run_scenario(Strategy::adaptive, p, f, opts);
  opts.mode = InertiaMode::classic;
  const Trajectory cl = run_scenario(Strategy::adaptive, p, f, opts);
  REQUIRE(ex.rows.size() == cl.rows.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < ex.rows.size(); ++k) {
    worst = std::max(worst, std::fabs(ex.rows[k].delta - cl.rows[k].delta));
  }
  // Same physics at synchronous speed, visibly different once it swings.
  CHECK(worst > 1e-6);
  CHECK(worst < 0.5);
}

TEST_CASE("saturated flag tracks the limiter, not the strategy label") {
  SystemParams p;
  FaultSpec f;
  RunOptions opts;
  const Trajectory none = run_scenario(Strategy::none, p, f, opts);
  for (const TrajectoryRow& r : none.rows) CHECK_FALSE(r.saturated);
  const Trajectory q = run_scenario(Strategy::q_priority, p, f, opts);
  bool any_sat = false;
  for (const TrajectoryRow& r : q.rows) {
    if (r.saturated) {
      any_sat = true;
      CHECK(r.i_mag <= 2.4 * (1.0 + 1e-9));
    }
  }
  CHECK(any_sat);
}

}  // TEST_SUITE
