// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsgcl/dq.hpp"
#include "vsgcl/limiters.hpp"
#include "vsgcl/params.hpp"
#include "vsgcl/phasor.hpp"

namespace vsgcl {

// Static transmitted-power characteristic P(delta) for one limiting strategy
// at fixed EMF and grid magnitudes.  The composed pipeline (voltage ->
// reference current -> limiter -> power) is the source of truth; closed forms
// exist for cross-checking on the r_v = 0 slice.
struct PDeltaCurve {
  Strategy strategy = Strategy::none;
  double e_mag = 1.0;
  double v_mag = 1.0;
  double r_v = 0.0;
  double x_v = 0.3;
  double i_max = 2.4;
  // Additive power offset; zero for physical curves.  Lets synthetic fixtures
  // (e.g. a constant during-fault power) reuse the same machinery.
  double power_offset = 0.0;
  // Regime boundaries in [0, 2*pi), ascending: angles where the active
  // limiter branch changes.  Used as quadrature breakpoints.
  std::vector<double> boundaries;

  DqPhasor reference(double delta) const {
    return reference_current({e_mag, v_mag, delta, r_v, x_v});
  }
  DqPhasor limited_current(double delta) const {
    return apply_limiter(strategy, reference(delta), i_max, delta);
  }
  bool saturated(double delta) const {
    return magnitude_sq(reference(delta)) > i_max * i_max;
  }
  double eval(double delta) const {
    double p =
        active_power(pcc_voltage_dq(v_mag, delta), limited_current(delta));
    // Skip the add when the offset is zero so scalar and batch evaluation
    // agree bit-for-bit even at signed zeros.
    return power_offset == 0.0 ? p : p + power_offset;
  }
  // Branch label at delta; see regime_tag() in pdelta.cpp for the vocabulary.
  const char* regime(double delta) const;
};

// Build a curve and compute its regime boundaries.
PDeltaCurve make_curve(Strategy s, double e_mag, double v_mag, double r_v,
                       double x_v, double i_max);
PDeltaCurve make_curve(Strategy s, const SystemParams& p, double v_mag,
                       double e_mag);

// Flat curve P(delta) = p for synthetic scenarios (boundary-free).
PDeltaCurve constant_curve(double p);

// Closed-form P(delta).  Strategy none accepts any r_v; the limited
// strategies are defined on the r_v = 0, e_mag = v_mag slice and throw
// NumericError elsewhere.
double eval_closed_form(const PDeltaCurve& c, double delta);

// Batch evaluation through the runtime-dispatched kernels (trig and the
// reference currents are prepared scalar; limiting and power are batched).
std::vector<double> eval_batch(const PDeltaCurve& c,
                               std::span<const double> deltas);

struct CurvePoint {
  double delta;
  double pe;
  std::string regime;
};

// Uniform table on [lo, hi] with n points (n >= 2), endpoints included.
std::vector<CurvePoint> sample_curve(const PDeltaCurve& c, double lo,
                                     double hi, int n);

}  // namespace vsgcl
