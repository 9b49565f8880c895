// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include <vsgcl/errors.hpp>
#include <vsgcl/limiters.hpp>

using namespace vsgcl;

namespace {

// Bit-level equality, distinguishing +0 from -0.
bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_SUITE("limiters") {

TEST_CASE("angle-priority scales the vector, preserving its direction") {
  const DqPhasor out = limit_angle_priority({1.5, -2.0}, 2.0);
  // |(1.5,-2)| = 2.5, scale 0.8.
  CHECK(out.d == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(out.q == doctest::Approx(-1.6).epsilon(1e-15));
  CHECK(std::atan2(out.q, out.d) ==
        doctest::Approx(std::atan2(-2.0, 1.5)).epsilon(1e-14));
}

TEST_CASE("d-priority keeps the active component and trims the rest") {
  // |i| > imax and |id| >= imax: d clamps, q collapses to zero.
  DqPhasor out = limit_d_priority({3.0, -1.0}, 2.4);
  CHECK(out.d == 2.4);
  CHECK(out.q == 0.0);
  CHECK_FALSE(std::signbit(out.d));
  out = limit_d_priority({-3.0, 1.0}, 2.4);
  CHECK(out.d == -2.4);
  CHECK(out.q == 0.0);
  // |id| < imax: d passes whole, q absorbs the cut.
  out = limit_d_priority({1.0, -2.6}, 2.4);
  CHECK(out.d == 1.0);
  CHECK(out.q == doctest::Approx(-std::sqrt(2.4 * 2.4 - 1.0)).epsilon(1e-15));
}

TEST_CASE("q-priority keeps the reactive component and trims the rest") {
  DqPhasor out = limit_q_priority({3.0, -1.0}, 2.4);
  CHECK(out.q == -1.0);
  CHECK(out.d == doctest::Approx(std::sqrt(2.4 * 2.4 - 1.0)).epsilon(1e-15));
  // |iq| >= imax: q clamps, d collapses to zero with the sign convention
  // that zero is treated as positive.
  out = limit_q_priority({1.0, -3.0}, 2.4);
  CHECK(out.q == -2.4);
  CHECK(out.d == 0.0);
  CHECK_FALSE(std::signbit(out.d));
}

TEST_CASE("adaptive places the saturated vector at half the power angle") {
  const double delta = 0.9;
  const DqPhasor sat = limit_adaptive({3.0, -1.0}, 2.4, delta, 0.5 * delta);
  CHECK(sat.d == doctest::Approx(2.4 * std::cos(delta)).epsilon(1e-15));
  CHECK(sat.q == doctest::Approx(-2.4 * std::sin(delta)).epsilon(1e-15));
  // A custom lead angle shifts the placement.
  const DqPhasor led = limit_adaptive({3.0, -1.0}, 2.4, 1.0, 0.2);
  CHECK(led.d == doctest::Approx(2.4 * std::cos(0.7)).epsilon(1e-15));
  CHECK(led.q == doctest::Approx(-2.4 * std::sin(0.7)).epsilon(1e-15));
}

TEST_CASE("vectors within the limit pass through bit-identically") {
  std::mt19937_64 rng(77001u);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int k = 0; k < 10000; ++k) {
    const double m = 2.4 * 0.999 * mag(rng);
    const double a = ang(rng);
    const DqPhasor i{m * std::cos(a), m * std::sin(a)};
    for (Strategy s : {Strategy::none, Strategy::angle_priority,
                       Strategy::d_priority, Strategy::q_priority,
                       Strategy::adaptive}) {
      const DqPhasor out = apply_limiter(s, i, 2.4, 0.7);
      CHECK(same_bits(out.d, i.d));
      CHECK(same_bits(out.q, i.q));
    }
  }
}

TEST_CASE("every limited output respects the magnitude bound") {
  std::mt19937_64 rng(77002u);
  std::uniform_real_distribution<double> comp(-8.0, 8.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  const double imax = 2.4;
  const double bound = imax * (1.0 + 1e-12);
  for (int k = 0; k < 10000; ++k) {
    const DqPhasor i{comp(rng), comp(rng)};
    const double delta = ang(rng);
    for (Strategy s : {Strategy::angle_priority, Strategy::d_priority,
                       Strategy::q_priority, Strategy::adaptive}) {
      const DqPhasor out = apply_limiter(s, i, imax, delta);
      CHECK(magnitude(out) <= bound);
    }
  }
}

TEST_CASE("limiting is idempotent") {
  // d/q/adaptive recompute from clamped components, so a second pass
  // reproduces the first bit for bit.  Angle-priority rescales, and the
  // rescale of an on-circle vector can differ in the last ulp, so it gets a
  // one-ulp allowance instead.
  std::mt19937_64 rng(77003u);
  std::uniform_real_distribution<double> comp(-8.0, 8.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int k = 0; k < 10000; ++k) {
    const DqPhasor i{comp(rng), comp(rng)};
    const double delta = ang(rng);
    for (Strategy s : {Strategy::d_priority, Strategy::q_priority,
                       Strategy::adaptive}) {
      const DqPhasor once = apply_limiter(s, i, 2.4, delta);
      const DqPhasor twice = apply_limiter(s, once, 2.4, delta);
      CHECK(same_bits(once.d, twice.d));
      CHECK(same_bits(once.q, twice.q));
    }
    const DqPhasor once = limit_angle_priority(i, 2.4);
    const DqPhasor twice = limit_angle_priority(once, 2.4);
    CHECK(std::fabs(twice.d - once.d) <=
          2.0 * std::fabs(once.d) * 2.3e-16);
    CHECK(std::fabs(twice.q - once.q) <=
          2.0 * std::fabs(once.q) * 2.3e-16);
  }
}

TEST_CASE("saturation keeps component signs for the priority strategies") {
  std::mt19937_64 rng(77004u);
  std::uniform_real_distribution<double> comp(-8.0, 8.0);
  for (int k = 0; k < 10000; ++k) {
    const DqPhasor i{comp(rng), comp(rng)};
    for (Strategy s : {Strategy::angle_priority, Strategy::d_priority,
                       Strategy::q_priority}) {
      const DqPhasor out = apply_limiter(s, i, 2.4, 0.0);
      // A nonzero output component never flips sign relative to its input.
      if (out.d != 0.0) CHECK(std::signbit(out.d) == std::signbit(i.d));
      if (out.q != 0.0) CHECK(std::signbit(out.q) == std::signbit(i.q));
    }
  }
}

TEST_CASE("negative zero inputs are treated as positive") {
  const DqPhasor out = limit_d_priority({-0.0, -3.0}, 2.4);
  CHECK(out.q == -2.4);
  CHECK_FALSE(std::signbit(out.d));
  const DqPhasor out2 = limit_q_priority({-3.0, -0.0}, 2.4);
  CHECK(out2.d == -2.4);
  CHECK_FALSE(std::signbit(out2.q));
}

TEST_CASE("strategy names round-trip through the parser") {
  for (Strategy s : {Strategy::none, Strategy::angle_priority,
                     Strategy::d_priority, Strategy::q_priority,
                     Strategy::adaptive}) {
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
  CHECK(parse_strategy("angle") == Strategy::angle_priority);
  CHECK(parse_strategy("d") == Strategy::d_priority);
  CHECK(parse_strategy("q") == Strategy::q_priority);
  CHECK_FALSE(parse_strategy("bogus").has_value());
}

}  // TEST_SUITE
