// SPDX-License-Identifier: Apache-2.0

#include "vsgcl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace vsgcl {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json opt_or_null(const std::optional<double>& v) {
  if (v.has_value()) return *v;
  return nullptr;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "t,delta,omega,e,vg,id_ref,iq_ref,id,iq,imag,pe,qe,saturated\n";
  for (const auto& r : t.rows) {
    os << g17(r.t) << ',' << g17(r.delta) << ',' << g17(r.omega) << ','
       << g17(r.e) << ',' << g17(r.v_g) << ',' << g17(r.id_ref) << ','
       << g17(r.iq_ref) << ',' << g17(r.id) << ',' << g17(r.iq) << ','
       << g17(r.i_mag) << ',' << g17(r.p_e) << ',' << g17(r.q_e) << ','
       << (r.saturated ? 1 : 0) << '\n';
  }
}

void write_pdelta_csv(std::ostream& os, const std::vector<CurvePoint>& points,
                      const std::string& strategy) {
  os << "delta_rad,pe_pu,regime,strategy\n";
  for (const auto& p : points) {
    os << g17(p.delta) << ',' << g17(p.pe) << ',' << p.regime << ','
       << strategy << '\n';
  }
}

std::string trajectory_json(const Trajectory& t, const std::string& digest,
                            bool with_rows) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "trajectory";
  j["strategy"] = strategy_name(t.strategy);
  j["mode"] = mode_name(t.mode);
  j["dt"] = t.dt;
  j["stride"] = t.stride;
  j["params_hash"] = digest;
  j["verdict"] = verdict_name(t.verdict);
  j["delta_u"] = t.delta_u;
  j["max_delta"] = t.max_delta;
  j["max_imag"] = t.max_i_mag;
  j["samples"] = t.rows.size();
  if (with_rows) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"t", r.t},
                      {"delta", r.delta},
                      {"omega", r.omega},
                      {"e", r.e},
                      {"vg", r.v_g},
                      {"id_ref", r.id_ref},
                      {"iq_ref", r.iq_ref},
                      {"id", r.id},
                      {"iq", r.iq},
                      {"imag", r.i_mag},
                      {"pe", r.p_e},
                      {"qe", r.q_e},
                      {"saturated", r.saturated}});
    }
    j["rows"] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

std::string pdelta_json(const std::vector<CurvePoint>& points,
                        const std::string& strategy,
                        const std::string& digest) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "pdelta";
  j["strategy"] = strategy;
  j["params_hash"] = digest;
  json rows = json::array();
  for (const auto& p : points) {
    rows.push_back(
        {{"delta_rad", p.delta}, {"pe_pu", p.pe}, {"regime", p.regime}});
  }
  j["points"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string pdelta_set_json(
    const std::vector<std::pair<std::string, std::vector<CurvePoint>>>& set,
    const std::string& digest) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "pdelta_set";
  j["params_hash"] = digest;
  json curves = json::array();
  for (const auto& [strategy, points] : set) {
    json rows = json::array();
    for (const auto& p : points) {
      rows.push_back(
          {{"delta_rad", p.delta}, {"pe_pu", p.pe}, {"regime", p.regime}});
    }
    curves.push_back({{"strategy", strategy}, {"points", std::move(rows)}});
  }
  j["curves"] = std::move(curves);
  return j.dump(2) + "\n";
}

void write_epac_csv(std::ostream& os, const EpacReport& r) {
  os << "key,value\n";
  os << "strategy," << r.strategy << '\n';
  os << "delta_0," << g17(r.delta_0) << '\n';
  os << "delta_c," << g17(r.delta_c) << '\n';
  os << "delta_u," << g17(r.delta_u) << '\n';
  os << "a_acc," << g17(r.a_acc) << '\n';
  os << "a_dec," << g17(r.a_dec) << '\n';
  os << "margin," << g17(r.margin) << '\n';
  os << "verdict," << r.verdict << '\n';
  os << "delta_cc," << g17(r.delta_cc) << '\n';
  os << "t_cc," << g17(r.t_cc) << '\n';
}

std::string epac_json(const EpacReport& r, const std::string& digest) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "epac";
  j["strategy"] = r.strategy;
  j["params_hash"] = digest;
  j["delta_0"] = r.delta_0;
  j["delta_c"] = r.delta_c;
  j["delta_u"] = r.delta_u;
  j["a_acc"] = r.a_acc;
  j["a_dec"] = r.a_dec;
  j["margin"] = r.margin;
  j["verdict"] = r.verdict;
  j["delta_cc"] = r.delta_cc;
  j["t_cc"] = r.t_cc;
  return j.dump(2) + "\n";
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "strategy,verdict,delta_peak,i_peak,a_acc,a_dec,margin,delta_cc,t_cc,"
        "epac_verdict\n";
  auto opt = [&](const std::optional<double>& v) {
    return v.has_value() ? g17(*v) : std::string();
  };
  for (const auto& r : rows) {
    os << r.strategy << ',' << r.verdict << ',' << g17(r.delta_peak) << ','
       << g17(r.i_peak) << ',' << opt(r.a_acc) << ',' << opt(r.a_dec) << ','
       << opt(r.margin) << ',' << opt(r.delta_cc) << ',' << opt(r.t_cc) << ','
       << r.epac_verdict << '\n';
  }
}

void write_compare_table(std::ostream& os,
                         const std::vector<CompareRow>& rows) {
  auto fmt = [](const std::optional<double>& v) -> std::string {
    if (!v.has_value()) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
  };
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %-9s %11s %8s %8s %8s %9s %9s %8s\n",
                "strategy", "verdict", "delta_peak", "i_peak", "a_acc",
                "a_dec", "margin", "delta_cc", "t_cc");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "%-15s %-9s %11.4f %8.4f %8s %8s %9s %9s %8s\n",
                  r.strategy.c_str(), r.verdict.c_str(), r.delta_peak,
                  r.i_peak, fmt(r.a_acc).c_str(), fmt(r.a_dec).c_str(),
                  fmt(r.margin).c_str(), fmt(r.delta_cc).c_str(),
                  fmt(r.t_cc).c_str());
    os << line;
  }
}

std::string compare_json(const std::vector<CompareRow>& rows,
                         const std::string& digest) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "compare";
  j["params_hash"] = digest;
  json arr = json::array();
  for (const auto& r : rows) {
    json e;
    e["strategy"] = r.strategy;
    e["verdict"] = r.verdict;
    e["delta_peak"] = r.delta_peak;
    e["i_peak"] = r.i_peak;
    e["a_acc"] = opt_or_null(r.a_acc);
    e["a_dec"] = opt_or_null(r.a_dec);
    e["margin"] = opt_or_null(r.margin);
    e["delta_cc"] = opt_or_null(r.delta_cc);
    e["t_cc"] = opt_or_null(r.t_cc);
    e["epac_verdict"] = r.epac_verdict;
    arr.push_back(std::move(e));
  }
  j["strategies"] = std::move(arr);
  return j.dump(2) + "\n";
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

void write_svg_plot(std::ostream& os, const PlotSpec& spec) {
  constexpr double W = 860.0, H = 520.0;
  constexpr double ML = 70.0, MR = 150.0, MT = 48.0, MB = 56.0;
  const double plot_w = W - ML - MR;
  const double plot_h = H - MT - MB;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (spec.hline.has_value()) {
    ymin = std::min(ymin, *spec.hline);
    ymax = std::max(ymax, *spec.hline);
  }
  if (!(xmax > xmin)) {
    xmax = xmin + 1.0;
  }
  if (!(ymax > ymin)) {
    ymax = ymin + 1.0;
  }
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) {
    return ML + (x - xmin) / (xmax - xmin) * plot_w;
  };
  auto py = [&](double y) {
    return MT + (ymax - y) / (ymax - ymin) * plot_h;
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
     << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        "font-family=\"monospace\" font-size=\"16\">"
     << spec.title << "</text>\n";

  // Frame and ticks.
  os << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << plot_w
     << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  constexpr int kTicks = 6;
  for (int i = 0; i <= kTicks; ++i) {
    double fx = xmin + (xmax - xmin) * i / kTicks;
    double fy = ymin + (ymax - ymin) * i / kTicks;
    double X = px(fx), Y = py(fy);
    os << "<line x1=\"" << f4(X) << "\" y1=\"" << MT + plot_h << "\" x2=\""
       << f4(X) << "\" y2=\"" << MT + plot_h + 5
       << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << f4(X) << "\" y=\"" << MT + plot_h + 20
       << "\" text-anchor=\"middle\" font-family=\"monospace\" "
          "font-size=\"11\">"
       << f4(fx) << "</text>\n";
    os << "<line x1=\"" << ML - 5 << "\" y1=\"" << f4(Y) << "\" x2=\"" << ML
       << "\" y2=\"" << f4(Y) << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << ML - 8 << "\" y=\"" << f4(Y + 4)
       << "\" text-anchor=\"end\" font-family=\"monospace\" "
          "font-size=\"11\">"
       << f4(fy) << "</text>\n";
  }
  os << "<text x=\"" << ML + plot_w / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"monospace\" "
        "font-size=\"13\">"
     << spec.x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << MT + plot_h / 2
     << "\" text-anchor=\"middle\" font-family=\"monospace\" "
        "font-size=\"13\" transform=\"rotate(-90 18 "
     << MT + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

  if (spec.hline.has_value() && *spec.hline >= ymin && *spec.hline <= ymax) {
    double Y = py(*spec.hline);
    os << "<line x1=\"" << ML << "\" y1=\"" << f4(Y) << "\" x2=\""
       << ML + plot_w << "\" y2=\"" << f4(Y)
       << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.6\" points=\"";
    for (auto [x, y] : s.points) {
      os << f4(px(x)) << ',' << f4(py(y)) << ' ';
    }
    os << "\"/>\n";
    double ly = MT + 16.0 + 18.0 * static_cast<double>(si);
    os << "<line x1=\"" << ML + plot_w + 10 << "\" y1=\"" << f4(ly - 4)
       << "\" x2=\"" << ML + plot_w + 34 << "\" y2=\"" << f4(ly - 4)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ML + plot_w + 40 << "\" y=\"" << f4(ly)
       << "\" font-family=\"monospace\" font-size=\"12\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace vsgcl
