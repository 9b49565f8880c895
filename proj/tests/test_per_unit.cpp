// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include <vsgcl/per_unit.hpp>

using namespace vsgcl;

TEST_SUITE("per_unit") {

TEST_CASE("derived bases from the default plant ratings") {
  BaseQuantities b;  // 1 kVA, 380 V, 314 rad/s
  CHECK(b.i_base() == doctest::Approx(1000.0 / 380.0).epsilon(1e-15));
  CHECK(b.z_base() == doctest::Approx(380.0 * 380.0 / 1000.0).epsilon(1e-15));
  CHECK(base_for(Quantity::power, b) == 1000.0);
  CHECK(base_for(Quantity::voltage, b) == 380.0);
  CHECK(base_for(Quantity::frequency, b) == 314.0);
  CHECK(base_for(Quantity::current, b) == doctest::Approx(b.i_base()));
  CHECK(base_for(Quantity::impedance, b) == doctest::Approx(b.z_base()));
}

TEST_CASE("conversion examples") {
  BaseQuantities b;
  // 6.3158 A is 2.4 pu on a 1 kVA / 380 V base.
  CHECK(to_per_unit(2.4 * 1000.0 / 380.0, Quantity::current, b) ==
        doctest::Approx(2.4).epsilon(1e-14));
  // 0.3 pu impedance is 43.32 ohm.
  CHECK(from_per_unit(0.3, Quantity::impedance, b) ==
        doctest::Approx(43.32).epsilon(1e-14));
  // 950 W on the kilowatt base.
  CHECK(to_per_unit(950.0, Quantity::power, b) ==
        doctest::Approx(0.95).epsilon(1e-15));
}

TEST_CASE("round trip is the identity to machine accuracy") {
  BaseQuantities b;
  b.s_base = 1234.5;
  b.v_base = 401.0;
  b.omega_base = 320.0;
  std::mt19937_64 rng(20260818u);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  const Quantity all[] = {Quantity::power, Quantity::voltage,
                          Quantity::current, Quantity::impedance,
                          Quantity::frequency};
  for (int k = 0; k < 1000; ++k) {
    for (Quantity q : all) {
      const double x = dist(rng);
      const double rt = from_per_unit(to_per_unit(x, q, b), q, b);
      CHECK(rt == doctest::Approx(x).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
