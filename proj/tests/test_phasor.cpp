// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <vsgcl/errors.hpp>
#include <vsgcl/phasor.hpp>

using namespace vsgcl;

namespace {

// Independent complex-arithmetic model of the same circuit.  The EMF-frame
// phasors are E (real) and V e^{-j delta}; the current is their difference
// over the impedance, and s = v * conj(i).
struct ComplexOracle {
  std::complex<double> v, i, s;
  ComplexOracle(const ElectricalState& st) {
    const std::complex<double> e{st.e_mag, 0.0};
    v = std::polar(st.v_mag, -st.delta);
    i = (e - v) / std::complex<double>{st.r_v, st.x_v};
    s = v * std::conj(i);
  }
};

}  // namespace

TEST_SUITE("phasor") {

TEST_CASE("voltage, current, and power match a complex-arithmetic oracle") {
  std::mt19937_64 rng(42001u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 5000; ++k) {
    ElectricalState st;
    st.e_mag = 0.2 + 1.3 * u01(rng);
    st.v_mag = 0.2 + 1.3 * u01(rng);
    st.delta = 6.283185307179586 * u01(rng);
    st.r_v = 0.5 * u01(rng);
    st.x_v = 0.05 + 0.95 * u01(rng);
    const ComplexOracle o(st);

    const DqPhasor v = pcc_voltage_dq(st.v_mag, st.delta);
    CHECK(v.d == doctest::Approx(o.v.real()).epsilon(1e-12));
    CHECK(v.q == doctest::Approx(o.v.imag()).epsilon(1e-12));

    const DqPhasor i = reference_current(st);
    CHECK(i.d == doctest::Approx(o.i.real()).epsilon(1e-11));
    CHECK(i.q == doctest::Approx(o.i.imag()).epsilon(1e-11));

    CHECK(active_power(v, i) ==
          doctest::Approx(o.s.real()).epsilon(1e-11).scale(1.0));
    CHECK(reactive_power(v, i) ==
          doctest::Approx(o.s.imag()).epsilon(1e-11).scale(1.0));
    CHECK(active_power_closed(st) ==
          doctest::Approx(o.s.real()).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("pure reactance reduces to the textbook component formulas") {
  std::mt19937_64 rng(42002u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    ElectricalState st;
    st.e_mag = 0.5 + u01(rng);
    st.v_mag = 0.5 + u01(rng);
    st.delta = 6.283185307179586 * u01(rng);
    st.r_v = 0.0;
    st.x_v = 0.1 + 0.9 * u01(rng);
    const DqPhasor i = reference_current(st);
    CHECK(i.d == doctest::Approx(st.v_mag * std::sin(st.delta) / st.x_v)
                     .epsilon(1e-12)
                     .scale(1.0));
    CHECK(i.q ==
          doctest::Approx((st.v_mag * std::cos(st.delta) - st.e_mag) / st.x_v)
              .epsilon(1e-12)
              .scale(1.0));
    const DqPhasor v = pcc_voltage_dq(st.v_mag, st.delta);
    CHECK(active_power(v, i) ==
          doctest::Approx(st.e_mag * st.v_mag * std::sin(st.delta) / st.x_v)
              .epsilon(1e-11)
              .scale(1.0));
    CHECK(reactive_power(v, i) ==
          doctest::Approx((st.e_mag * st.v_mag * std::cos(st.delta) -
                           st.v_mag * st.v_mag) /
                          st.x_v)
              .epsilon(1e-11)
              .scale(1.0));
  }
}

TEST_CASE("nominal operating point current magnitude") {
  // E = V = 1, x = 0.3: |i| = 2 V sin(delta/2) / x.
  ElectricalState st;
  st.delta = 1.0471975511965976;  // 60 degrees
  const DqPhasor i = reference_current(st);
  CHECK(magnitude(i) ==
        doctest::Approx(2.0 * std::sin(0.5 * st.delta) / 0.3).epsilon(1e-13));
}

TEST_CASE("zero virtual impedance is rejected") {
  ElectricalState st;
  st.r_v = 0.0;
  st.x_v = 0.0;
  CHECK_THROWS_AS(reference_current(st), NumericError);
  CHECK_THROWS_AS(active_power_closed(st), NumericError);
}

TEST_CASE("reactive droop regulator") {
  // Exporting 1 pu reactive power with 5% droop pulls the EMF down 5%.
  CHECK(avr_voltage(1.0, 1.0, 0.05, 0.0) ==
        doctest::Approx(0.95).epsilon(1e-15));
  // Absorbing raises it symmetrically.
  CHECK(avr_voltage(-1.0, 1.0, 0.05, 0.0) ==
        doctest::Approx(1.05).epsilon(1e-15));
  // Zero gain pins the EMF to its reference.
  CHECK(avr_voltage(123.0, 1.0, 0.0, 0.0) == 1.0);
  // The output never goes negative.
  CHECK(avr_voltage(1e9, 1.0, 0.05, 0.0) == 0.0);
}

}  // TEST_SUITE
