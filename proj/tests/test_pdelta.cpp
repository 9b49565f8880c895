// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <vsgcl/errors.hpp>
#include <vsgcl/kernels.hpp>
#include <vsgcl/pdelta.hpp>

using namespace vsgcl;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Nominal stiff-grid slice: E = V = 1, r = 0, x = 0.3, limit 2.4.
PDeltaCurve nominal(Strategy s) { return make_curve(s, 1.0, 1.0, 0.0, 0.3, 2.4); }

// Saturation onset for that slice: |i| = 2 sin(delta/2) / x reaches the limit
// at delta = 2 asin(i_max x / 2).
const double kSatOn = 2.0 * std::asin(0.36);

bool has_boundary_near(const PDeltaCurve& c, double x, double tol) {
  return std::any_of(c.boundaries.begin(), c.boundaries.end(),
                     [&](double b) { return std::fabs(b - x) <= tol; });
}

}  // namespace

TEST_SUITE("pdelta") {

TEST_CASE("regime boundaries land on their analytic angles") {
  const PDeltaCurve angle = nominal(Strategy::angle_priority);
  REQUIRE(angle.boundaries.size() == 2);
  CHECK(angle.boundaries[0] == doctest::Approx(kSatOn).epsilon(1e-9));
  CHECK(angle.boundaries[1] ==
        doctest::Approx(2.0 * kPi - kSatOn).epsilon(1e-9));

  // d-priority adds the |id| = i_max crossings: sin(delta) = i_max x / V.
  const PDeltaCurve d = nominal(Strategy::d_priority);
  const double dcl = std::asin(0.72);
  CHECK(has_boundary_near(d, kSatOn, 1e-9));
  CHECK(has_boundary_near(d, dcl, 1e-9));
  CHECK(has_boundary_near(d, kPi - dcl, 1e-9));

  // q-priority adds the |iq| = i_max crossings: cos(delta) = 1 - i_max x / V.
  const PDeltaCurve q = nominal(Strategy::q_priority);
  const double qcl = std::acos(0.28);
  CHECK(has_boundary_near(q, kSatOn, 1e-9));
  CHECK(has_boundary_near(q, qcl, 1e-9));
  CHECK(has_boundary_near(q, 2.0 * kPi - qcl, 1e-9));

  const PDeltaCurve adaptive = nominal(Strategy::adaptive);
  CHECK(has_boundary_near(adaptive, kSatOn, 1e-9));

  // An unreachable limit produces a boundary-free, never-saturated curve.
  const PDeltaCurve open = make_curve(Strategy::q_priority, 1.0, 1.0, 0.0,
                                      0.3, 100.0);
  CHECK(open.boundaries.empty());
  CHECK_FALSE(open.saturated(kPi));
}

TEST_CASE("composed pipeline matches the closed forms everywhere") {
  for (Strategy s : {Strategy::none, Strategy::angle_priority,
                     Strategy::d_priority, Strategy::q_priority,
                     Strategy::adaptive}) {
    const PDeltaCurve c = nominal(s);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const double delta = 2.0 * kPi * (k + 0.5) / 2000.0;
      const double diff = std::fabs(c.eval(delta) - eval_closed_form(c, delta));
      worst = std::max(worst, diff);
    }
    CAPTURE(strategy_name(s));
    CHECK(worst <= 1e-9);
  }
  // Strategy none also has a closed form off the E = V, r = 0 slice.
  const PDeltaCurve skew =
      make_curve(Strategy::none, 1.1, 0.9, 0.05, 0.4, 2.4);
  for (int k = 0; k < 500; ++k) {
    const double delta = 2.0 * kPi * k / 500.0;
    CHECK(skew.eval(delta) ==
          doctest::Approx(eval_closed_form(skew, delta)).epsilon(1e-11));
  }
}

TEST_CASE("closed forms are restricted to their validity slice") {
  const PDeltaCurve off_r = make_curve(Strategy::q_priority, 1.0, 1.0, 0.05,
                                       0.3, 2.4);
  CHECK_THROWS_AS(eval_closed_form(off_r, 1.0), NumericError);
  const PDeltaCurve off_e = make_curve(Strategy::q_priority, 1.05, 1.0, 0.0,
                                       0.3, 2.4);
  CHECK_THROWS_AS(eval_closed_form(off_e, 1.0), NumericError);
}

TEST_CASE("the three trimming strategies stay continuous across boundaries") {
  // The component-clamp branches meet with a square-root profile, so the
  // one-sided difference shrinks like sqrt(eps), not eps.  A 1e-12 window
  // bounds a genuine step at ~4e-6 while any real discontinuity would show
  // at full size (compare the adaptive strategy's 0.16 pu jump).
  const double eps = 1e-12;
  for (Strategy s : {Strategy::angle_priority, Strategy::d_priority,
                     Strategy::q_priority}) {
    const PDeltaCurve c = nominal(s);
    for (double b : c.boundaries) {
      const double jump = std::fabs(c.eval(b + eps) - c.eval(b - eps));
      CAPTURE(strategy_name(s));
      CAPTURE(b);
      CHECK(jump <= 1e-4);
    }
  }
}

TEST_CASE("the adaptive curve jumps to full transfer at saturation onset") {
  const PDeltaCurve c = nominal(Strategy::adaptive);
  const double before = c.eval(kSatOn - 1e-9);
  const double after = c.eval(kSatOn + 1e-9);
  // Unsaturated value at onset: sin(2 asin(0.36)) / 0.3.
  CHECK(before == doctest::Approx(std::sin(kSatOn) / 0.3).epsilon(1e-6));
  // Saturated value: V * i_max, independent of the angle.
  CHECK(after == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(after - before == doctest::Approx(0.16092).epsilon(1e-3));
  // And it holds that plateau across the whole saturated span.
  CHECK(c.eval(2.0) == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(c.eval(4.5) == doctest::Approx(2.4).epsilon(1e-9));
}

TEST_CASE("the mixed d-priority branch differs from the naive sign choice "
          "by exactly twice the q-term") {
  // On the branch where d passes whole but q is trimmed, writing the power
  // with a minus on the q-term (a plausible transcription of the formula)
  // differs from the pipeline by exactly 2 V sin(delta) sqrt(imax^2 - id^2).
  const PDeltaCurve c = nominal(Strategy::d_priority);
  for (double delta : {0.77, 2.5, 2.8}) {
    REQUIRE(c.saturated(delta));
    const double id = std::sin(delta) / 0.3;
    REQUIRE(std::fabs(id) < 2.4);
    const double head = std::sqrt(2.4 * 2.4 - id * id);
    const double naive =
        std::sin(delta) * std::cos(delta) / 0.3 - std::sin(delta) * head;
    const double gap = c.eval(delta) - naive;
    CHECK(gap == doctest::Approx(2.0 * std::sin(delta) * head)
                     .epsilon(1e-10)
                     .scale(1.0));
  }
  // The discrepancy is material, not a rounding artifact.
  CHECK(std::fabs(2.0 * std::sin(2.5) * std::sqrt(
                      2.4 * 2.4 - std::pow(std::sin(2.5) / 0.3, 2))) > 0.5);
}

TEST_CASE("batch evaluation equals scalar evaluation bit for bit") {
  std::vector<double> deltas;
  for (int k = 0; k < 1537; ++k) {
    deltas.push_back(2.0 * kPi * k / 1536.0);
  }
  const kernels::Backend initial = kernels::active_backend();
  for (kernels::Backend b : {kernels::Backend::scalar,
                             kernels::Backend::avx2}) {
    if (!kernels::backend_supported(b)) continue;
    kernels::set_backend(b);
    for (Strategy s : {Strategy::none, Strategy::angle_priority,
                       Strategy::d_priority, Strategy::q_priority,
                       Strategy::adaptive}) {
      const PDeltaCurve c = nominal(s);
      const std::vector<double> batch = eval_batch(c, deltas);
      REQUIRE(batch.size() == deltas.size());
      for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double scalar = c.eval(deltas[k]);
        CHECK(std::memcmp(&batch[k], &scalar, sizeof scalar) == 0);
      }
    }
  }
  kernels::set_backend(initial);
}

TEST_CASE("regime tags name the active branch") {
  CHECK(std::string(nominal(Strategy::none).regime(2.0)) == "unsaturated");
  const PDeltaCurve angle = nominal(Strategy::angle_priority);
  CHECK(std::string(angle.regime(0.3)) == "unsaturated");
  CHECK(std::string(angle.regime(1.0)) == "saturated");
  const PDeltaCurve d = nominal(Strategy::d_priority);
  CHECK(std::string(d.regime(0.3)) == "unsaturated");
  CHECK(std::string(d.regime(0.78)) == "q_trimmed");
  CHECK(std::string(d.regime(1.5)) == "d_clamped");
  const PDeltaCurve q = nominal(Strategy::q_priority);
  CHECK(std::string(q.regime(0.3)) == "unsaturated");
  CHECK(std::string(q.regime(1.0)) == "d_trimmed");
  CHECK(std::string(q.regime(1.5)) == "q_clamped");
  const PDeltaCurve a = nominal(Strategy::adaptive);
  CHECK(std::string(a.regime(0.3)) == "unsaturated");
  CHECK(std::string(a.regime(2.0)) == "saturated");
}

TEST_CASE("sample_curve produces an inclusive uniform grid") {
  const PDeltaCurve c = nominal(Strategy::q_priority);
  const auto pts = sample_curve(c, 0.0, kPi, 5);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front().delta == 0.0);
  CHECK(pts.back().delta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(pts[1].delta == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  for (const auto& p : pts) {
    CHECK(p.pe == doctest::Approx(c.eval(p.delta)).epsilon(1e-15).scale(1.0));
    CHECK(p.regime == c.regime(p.delta));
  }
}

TEST_CASE("constant curves are flat and boundary-free") {
  const PDeltaCurve c = constant_curve(0.25);
  CHECK(c.boundaries.empty());
  CHECK(c.eval(0.0) == 0.25);
  CHECK(c.eval(2.5) == 0.25);
  CHECK(std::string(c.regime(1.0)) == "unsaturated");
}

TEST_CASE("the unsaturated rise is monotone up to saturation onset") {
  const PDeltaCurve c = nominal(Strategy::q_priority);
  double prev = c.eval(0.0);
  for (int k = 1; k <= 200; ++k) {
    const double delta = (kSatOn - 1e-6) * k / 200.0;
    const double p = c.eval(delta);
    CHECK(p >= prev - 1e-12);
    prev = p;
  }
}

}  // TEST_SUITE
