// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vsgcl/errors.hpp"

namespace vsgcl {

// Bisection on a bracketing interval: f(a) and f(b) must differ in sign
// (zero endpoints count as roots).  Converges to |b - a| <= tol_x.
template <class F>
double bisect(F&& f, double a, double b, double tol_x, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    throw NumericError("bisect: interval does not bracket a root");
  }
  for (int it = 0; it < max_iter && (b - a) > tol_x; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Scan [a, b] in n equal panels and return every panel whose endpoints
// straddle a sign change of f.
template <class F>
std::vector<std::pair<double, double>> sign_change_brackets(F&& f, double a,
                                                            double b,
                                                            std::size_t n) {
  std::vector<std::pair<double, double>> out;
  double h = (b - a) / static_cast<double>(n);
  double x0 = a;
  double f0 = f(x0);
  for (std::size_t i = 1; i <= n; ++i) {
    double x1 = (i == n) ? b : a + h * static_cast<double>(i);
    double f1 = f(x1);
    if (f0 == 0.0 || f1 == 0.0 || (f0 < 0.0) != (f1 < 0.0)) {
      out.emplace_back(x0, x1);
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance.  Signed: a > b gives
// the negated integral.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = 48) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fb = f(b);
  double fm = f(m);
  double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol,
                                      max_depth);
}

// Quadrature over [a, b] split at the interior breakpoints (typically regime
// boundaries where the integrand has a kink), so each panel is smooth.
template <class F>
double integrate_with_breakpoints(F&& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  double abs_tol) {
  if (a == b) return 0.0;
  if (a > b) {
    return -integrate_with_breakpoints(std::forward<F>(f), b, a, breakpoints,
                                       abs_tol);
  }
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double per_panel = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    total += adaptive_simpson(f, cuts[i], cuts[i + 1], per_panel);
  }
  return total;
}

// Locate y(t) = target inside one integrator step using the cubic Hermite
// interpolant built from endpoint values and slopes.  Assumes the crossing
// exists in [t0, t1]; returns the crossing time to tol_t.
inline double hermite_crossing(double t0, double y0, double dy0, double t1,
                               double y1, double dy1, double target,
                               double tol_t) {
  double h = t1 - t0;
  auto value = [&](double t) {
    double s = (t - t0) / h;
    double s2 = s * s;
    double s3 = s2 * s;
    double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    double h10 = s3 - 2.0 * s2 + s;
    double h01 = -2.0 * s3 + 3.0 * s2;
    double h11 = s3 - s2;
    return h00 * y0 + h10 * h * dy0 + h01 * y1 + h11 * h * dy1 - target;
  };
  return bisect(value, t0, t1, tol_t);
}

}  // namespace vsgcl
