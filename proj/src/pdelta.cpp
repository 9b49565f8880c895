// SPDX-License-Identifier: Apache-2.0

#include "vsgcl/pdelta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsgcl/errors.hpp"
#include "vsgcl/kernels.hpp"
#include "vsgcl/numerics.hpp"

namespace vsgcl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Collect roots of f over [0, 2*pi) by scanning panels and bisecting each
// sign change.  Duplicates within eps collapse.
template <class F>
void append_roots(F&& f, std::vector<double>& out) {
  constexpr std::size_t kPanels = 8192;
  for (auto [a, b] : sign_change_brackets(f, 0.0, kTwoPi, kPanels)) {
    double r = bisect(f, a, b, 1e-10);
    out.push_back(r);
  }
}

void sort_dedupe(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(),
                      [](double a, double b) { return b - a < 1e-9; }),
          v.end());
}

}  // namespace

const char* PDeltaCurve::regime(double delta) const {
  if (!saturated(delta)) return "unsaturated";
  switch (strategy) {
    case Strategy::none:
      return "unsaturated";  // no limiter: magnitude may exceed i_max freely
    case Strategy::angle_priority:
    case Strategy::adaptive:
      return "saturated";
    case Strategy::d_priority:
      return std::fabs(reference(delta).d) >= i_max ? "d_clamped"
                                                    : "q_trimmed";
    case Strategy::q_priority:
      return std::fabs(reference(delta).q) >= i_max ? "q_clamped"
                                                    : "d_trimmed";
  }
  return "?";
}

PDeltaCurve make_curve(Strategy s, double e_mag, double v_mag, double r_v,
                       double x_v, double i_max) {
  PDeltaCurve c;
  c.strategy = s;
  c.e_mag = e_mag;
  c.v_mag = v_mag;
  c.r_v = r_v;
  c.x_v = x_v;
  c.i_max = i_max;

  if (s != Strategy::none) {
    auto sat_margin = [&](double d) {
      return magnitude_sq(c.reference(d)) - i_max * i_max;
    };
    append_roots(sat_margin, c.boundaries);
    if (s == Strategy::d_priority) {
      auto d_margin = [&](double d) {
        return std::fabs(c.reference(d).d) - i_max;
      };
      append_roots(d_margin, c.boundaries);
    } else if (s == Strategy::q_priority) {
      auto q_margin = [&](double d) {
        return std::fabs(c.reference(d).q) - i_max;
      };
      append_roots(q_margin, c.boundaries);
    }
    sort_dedupe(c.boundaries);
  }
  return c;
}

PDeltaCurve make_curve(Strategy s, const SystemParams& p, double v_mag,
                       double e_mag) {
  return make_curve(s, e_mag, v_mag, p.r_v, p.x_v, p.i_max);
}

PDeltaCurve constant_curve(double p) {
  PDeltaCurve c;
  c.strategy = Strategy::none;
  c.e_mag = 0.0;
  c.v_mag = 0.0;  // pipeline contributes exactly zero power
  c.x_v = 1.0;
  c.power_offset = p;
  return c;
}

double eval_closed_form(const PDeltaCurve& c, double delta) {
  if (c.strategy == Strategy::none) {
    return c.power_offset +
           active_power_closed({c.e_mag, c.v_mag, delta, c.r_v, c.x_v});
  }
  if (c.r_v != 0.0) {
    throw NumericError(
        "eval_closed_form: limited-strategy closed forms require r_v = 0");
  }
  // The saturated-branch forms are stated on the slice where the EMF tracks
  // the grid magnitude; enforce that instead of silently mis-evaluating.
  if (c.e_mag != c.v_mag) {
    throw NumericError(
        "eval_closed_form: limited-strategy closed forms require e_mag == "
        "v_mag");
  }
  const double V = c.v_mag;
  const double x = c.x_v;
  const double I = c.i_max;
  const double sd = std::sin(delta);
  const double cd = std::cos(delta);
  // Reference currents on this slice: id = V sin(d)/x, iq = V(cos(d)-1)/x.
  const double id = V * sd / x;
  const double iq = V * (cd - 1.0) / x;
  const bool sat = id * id + iq * iq > I * I;
  const double unsat_p = V * V * sd / x;  // E V sin(delta)/x at E = V

  switch (c.strategy) {
    case Strategy::angle_priority:
      // Scaling preserves the current angle; with E = V the geometry gives
      // P = V I cos(delta/2).
      return sat ? V * I * std::cos(0.5 * delta) : unsat_p;
    case Strategy::d_priority: {
      if (!sat) return unsat_p;
      if (std::fabs(id) >= I) {
        // d axis saturates alone: i = (sign(id) I, 0).
        double sgn = (id < 0.0) ? -1.0 : 1.0;
        return sgn * V * cd * I;
      }
      // d kept, q trimmed into the headroom; sign(iq) = -1 off delta = 0.
      return V * V * sd * cd / x + V * sd * std::sqrt(I * I - id * id);
    }
    case Strategy::q_priority: {
      if (!sat) return unsat_p;
      if (std::fabs(iq) >= I) {
        // q axis saturates alone: i = (0, -I); P = (-V sin d)(-I).
        return V * I * sd;
      }
      double sgn = (sd < 0.0) ? -1.0 : 1.0;
      return sgn * V * cd * std::sqrt(I * I - iq * iq) - V * V * sd * (cd - 1.0) / x;
    }
    case Strategy::adaptive: {
      if (!sat) return unsat_p;
      // P = V I cos(phi - delta/2); the default schedule phi = delta/2
      // pins the saturated power at V * I.
      double phi = phi_half_delta(delta);
      return V * I * std::cos(phi - 0.5 * delta);
    }
    case Strategy::none:
      break;  // handled above
  }
  throw NumericError("eval_closed_form: unreachable strategy");
}

std::vector<double> eval_batch(const PDeltaCurve& c,
                               std::span<const double> deltas) {
  const std::size_t n = deltas.size();
  std::vector<double> vd(n), vq(n), id(n), iq(n), pe(n), qe(n);
  for (std::size_t k = 0; k < n; ++k) {
    DqPhasor v = pcc_voltage_dq(c.v_mag, deltas[k]);
    DqPhasor i = c.reference(deltas[k]);
    vd[k] = v.d;
    vq[k] = v.q;
    id[k] = i.d;
    iq[k] = i.q;
  }
  switch (c.strategy) {
    case Strategy::none:
      break;
    case Strategy::angle_priority:
      kernels::limit_angle_batch(id.data(), iq.data(), c.i_max, n, id.data(),
                                 iq.data());
      break;
    case Strategy::d_priority:
      kernels::limit_d_batch(id.data(), iq.data(), c.i_max, n, id.data(),
                             iq.data());
      break;
    case Strategy::q_priority:
      kernels::limit_q_batch(id.data(), iq.data(), c.i_max, n, id.data(),
                             iq.data());
      break;
    case Strategy::adaptive: {
      std::vector<double> cs(n), sn(n);
      for (std::size_t k = 0; k < n; ++k) {
        double a = 0.5 * deltas[k] + phi_half_delta(deltas[k]);
        cs[k] = std::cos(a);
        sn[k] = std::sin(a);
      }
      kernels::limit_adaptive_batch(id.data(), iq.data(), cs.data(), sn.data(),
                                    c.i_max, n, id.data(), iq.data());
      break;
    }
  }
  kernels::power_batch(vd.data(), vq.data(), id.data(), iq.data(), n,
                       pe.data(), qe.data());
  if (c.power_offset != 0.0) {
    for (double& p : pe) p = p + c.power_offset;
  }
  return pe;
}

std::vector<CurvePoint> sample_curve(const PDeltaCurve& c, double lo,
                                     double hi, int n) {
  if (n < 2) throw Error("sample_curve: need at least two points");
  std::vector<double> deltas(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    deltas[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  std::vector<double> pe = eval_batch(c, deltas);
  std::vector<CurvePoint> out;
  out.reserve(deltas.size());
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    out.push_back({deltas[k], pe[k], c.regime(deltas[k])});
  }
  return out;
}

}  // namespace vsgcl
