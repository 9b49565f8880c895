// SPDX-License-Identifier: Apache-2.0
//
// vsgcl: phasor-level transient-stability toolkit for a grid-tied virtual
// synchronous generator under current limiting.
//
// Subcommands: simulate, compare, pdelta, epac, cca, limit.
// Exit codes: 0 success, 2 usage/config error, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsgcl/config.hpp"
#include "vsgcl/epac.hpp"
#include "vsgcl/errors.hpp"
#include "vsgcl/kernels.hpp"
#include "vsgcl/log.hpp"
#include "vsgcl/pdelta.hpp"
#include "vsgcl/report.hpp"
#include "vsgcl/swing.hpp"

namespace {

using namespace vsgcl;

struct GlobalOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out;
  double dt = 0.0;          // 0 = keep config value
  std::string mode;         // empty = keep config value
  int stride = 0;           // 0 = keep config value
  std::string format = "csv";
};

LoadedConfig resolve_config(const GlobalOpts& g) {
  std::optional<std::string> path;
  if (!g.config_path.empty()) path = g.config_path;
  LoadedConfig cfg = load_config(path, g.sets);
  if (g.dt > 0.0) cfg.run.dt = g.dt;
  if (g.stride > 0) cfg.run.stride = g.stride;
  if (!g.mode.empty()) {
    cfg.run.mode =
        g.mode == "classic" ? InertiaMode::classic : InertiaMode::exact;
  }
  validate(cfg.run);
  return cfg;
}

Strategy resolve_strategy(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s.has_value()) {
    throw ConfigError("unknown strategy '" + name +
                      "' (expected none|angle|d|q|adaptive)");
  }
  return *s;
}

std::vector<Strategy> resolve_strategies(const std::string& csv) {
  std::vector<Strategy> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(resolve_strategy(tok));
  }
  if (out.empty()) throw ConfigError("empty strategy list");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw Error("failed writing output file '" + path + "'");
}

std::string sidecar_path(const std::string& out, const char* ext) {
  std::filesystem::path p(out);
  p.replace_extension(ext);
  return p.string();
}

// Equal-area scenario for the configured sag, with the EMF frozen at its
// reference value.
EpacScenario scenario_for(Strategy st, const LoadedConfig& cfg) {
  const SystemParams& p = cfg.system;
  EpacScenario s;
  s.pre = make_curve(st, p, p.v_grid, p.e_ref);
  s.fault = make_curve(st, p, cfg.fault.v_retained, p.e_ref);
  s.post = make_curve(st, p, p.v_grid, p.e_ref);
  s.p_m = p.p_m;
  return s;
}

// ---- simulate ----

int cmd_simulate(const GlobalOpts& g, const std::string& strategy) {
  LoadedConfig cfg = resolve_config(g);
  Strategy st = resolve_strategy(strategy);
  Trajectory traj = run_scenario(st, cfg.system, cfg.fault, cfg.run);
  std::string digest = params_digest(cfg, strategy_name(st), cfg.run.mode);

  if (g.format == "json") {
    std::string doc = trajectory_json(traj, digest, true);
    if (!g.out.empty()) {
      write_file(g.out, doc);
      std::cout << "verdict: " << verdict_name(traj.verdict) << "\n";
    } else {
      std::cout << doc;
    }
    return 0;
  }
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  if (!g.out.empty()) {
    write_file(g.out, csv.str());
    write_file(sidecar_path(g.out, ".json"),
               trajectory_json(traj, digest, false));
    std::cout << "verdict: " << verdict_name(traj.verdict) << "\n";
  } else {
    std::cout << csv.str();
    std::cerr << "verdict: " << verdict_name(traj.verdict) << "\n";
  }
  return 0;
}

// ---- pdelta ----

int cmd_pdelta(const GlobalOpts& g, const std::string& strategies, int points,
               double delta_max, double vg, const std::string& svg_prefix) {
  LoadedConfig cfg = resolve_config(g);
  const SystemParams& p = cfg.system;
  double v = vg > 0.0 ? vg : p.v_grid;
  auto list = resolve_strategies(strategies);
  std::string digest = params_digest(cfg, strategies, cfg.run.mode);

  std::vector<std::pair<std::string, std::vector<CurvePoint>>> set;
  for (Strategy st : list) {
    PDeltaCurve c = make_curve(st, p, v, p.e_ref);
    set.emplace_back(strategy_name(st), sample_curve(c, 0.0, delta_max,
                                                     points));
  }

  if (!svg_prefix.empty()) {
    for (const auto& [name, pts] : set) {
      PlotSpec spec;
      spec.title = std::string("P-delta curve: ") + name;
      spec.x_label = "delta [rad]";
      spec.y_label = "P [pu]";
      PlotSeries ser;
      ser.label = name;
      for (const auto& cp : pts) ser.points.emplace_back(cp.delta, cp.pe);
      spec.series.push_back(std::move(ser));
      spec.hline = p.p_m;
      std::ostringstream svg;
      write_svg_plot(svg, spec);
      write_file(svg_prefix + "_" + name + ".svg", svg.str());
    }
  }

  if (g.format == "json") {
    std::string doc = pdelta_set_json(set, digest);
    if (!g.out.empty()) {
      write_file(g.out, doc);
    } else {
      std::cout << doc;
    }
    return 0;
  }
  std::ostringstream csv;
  bool first = true;
  for (const auto& [name, pts] : set) {
    if (first) {
      write_pdelta_csv(csv, pts, name);
      first = false;
    } else {
      std::ostringstream one;
      write_pdelta_csv(one, pts, name);
      std::string text = one.str();
      csv << text.substr(text.find('\n') + 1);  // drop repeated header
    }
  }
  if (!g.out.empty()) {
    write_file(g.out, csv.str());
  } else {
    std::cout << csv.str();
  }
  return 0;
}

// ---- epac ----

EpacReport build_epac_report(Strategy st, const LoadedConfig& cfg,
                             std::optional<double> delta_c_opt) {
  const SystemParams& p = cfg.system;
  EpacScenario s = scenario_for(st, cfg);
  double delta_c =
      delta_c_opt.has_value()
          ? *delta_c_opt
          : fault_angle_at(s, p, cfg.fault.t_clear - cfg.fault.t_fault,
                           cfg.run.dt);
  EpacResult res = epac_verdict(s, delta_c);
  EpacReport r;
  r.strategy = strategy_name(st);
  r.delta_0 = res.delta_0;
  r.delta_c = delta_c;
  r.delta_u = res.delta_u;
  r.a_acc = res.areas.a_acc;
  r.a_dec = res.areas.a_dec;
  r.margin = res.margin;
  r.verdict = verdict_name(res.verdict);
  try {
    r.delta_cc = critical_clearing_angle(s);
    r.t_cc = critical_clearing_time(s, p, cfg.run.dt);
  } catch (const NumericError&) {
    r.delta_cc = std::numeric_limits<double>::quiet_NaN();
    r.t_cc = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

int cmd_epac(const GlobalOpts& g, const std::string& strategy,
             std::optional<double> delta_c) {
  LoadedConfig cfg = resolve_config(g);
  Strategy st = resolve_strategy(strategy);
  EpacReport r = build_epac_report(st, cfg, delta_c);
  std::string digest = params_digest(cfg, strategy_name(st), cfg.run.mode);
  std::string doc;
  if (g.format == "json") {
    doc = epac_json(r, digest);
  } else {
    std::ostringstream os;
    write_epac_csv(os, r);
    doc = os.str();
  }
  if (!g.out.empty()) {
    write_file(g.out, doc);
  } else {
    std::cout << doc;
  }
  return 0;
}

// ---- cca ----

int cmd_cca(const GlobalOpts& g, const std::string& strategy,
            std::optional<double> fault_power) {
  LoadedConfig cfg = resolve_config(g);
  Strategy st = resolve_strategy(strategy);
  const SystemParams& p = cfg.system;
  EpacScenario s = scenario_for(st, cfg);
  if (fault_power.has_value()) {
    s.fault = constant_curve(*fault_power);
  }
  double dcc = critical_clearing_angle(s);
  double tcc = critical_clearing_time(s, p, cfg.run.dt);
  std::string doc;
  if (g.format == "json") {
    doc = std::string("{\n  \"schema_version\": 1,\n  \"kind\": \"cca\",\n") +
          "  \"strategy\": \"" + strategy_name(st) + "\",\n" +
          "  \"delta_cc\": " + std::to_string(dcc) + ",\n" +
          "  \"t_cc\": " + std::to_string(tcc) + "\n}\n";
  } else {
    std::ostringstream os;
    char buf[64];
    os << "key,value\n";
    std::snprintf(buf, sizeof buf, "%.17g", dcc);
    os << "delta_cc," << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", tcc);
    os << "t_cc," << buf << "\n";
    doc = os.str();
  }
  if (!g.out.empty()) {
    write_file(g.out, doc);
  } else {
    std::cout << doc;
  }
  return 0;
}

// ---- compare ----

int cmd_compare(const GlobalOpts& g, const std::string& strategies) {
  LoadedConfig cfg = resolve_config(g);
  const SystemParams& p = cfg.system;
  auto list = resolve_strategies(strategies);
  std::string digest = params_digest(cfg, strategies, cfg.run.mode);

  std::vector<CompareRow> rows;
  for (Strategy st : list) {
    Trajectory traj = run_scenario(st, p, cfg.fault, cfg.run);
    CompareRow row;
    row.strategy = strategy_name(st);
    row.verdict = verdict_name(traj.verdict);
    row.delta_peak = traj.max_delta;
    row.i_peak = traj.max_i_mag;
    row.epac_verdict = "-";
    try {
      EpacReport er = build_epac_report(st, cfg, std::nullopt);
      row.a_acc = er.a_acc;
      row.a_dec = er.a_dec;
      row.margin = er.margin;
      row.epac_verdict = er.verdict;
      if (std::isfinite(er.delta_cc)) row.delta_cc = er.delta_cc;
      if (std::isfinite(er.t_cc)) row.t_cc = er.t_cc;
    } catch (const NumericError& e) {
      log_warn(std::string("equal-area columns unavailable for ") +
               row.strategy + ": " + e.what());
    }
    rows.push_back(std::move(row));
  }

  if (g.format == "json") {
    std::cout << compare_json(rows, digest);
  } else {
    write_compare_table(std::cout, rows);
  }

  if (!g.out.empty()) {
    std::ostringstream csv;
    write_compare_csv(csv, rows);
    write_file(g.out + ".csv", csv.str());
    write_file(g.out + ".json", compare_json(rows, digest));
    // Post-fault transmitted-power overlay.
    PlotSpec spec;
    spec.title = "post-fault P-delta by strategy";
    spec.x_label = "delta [rad]";
    spec.y_label = "P [pu]";
    spec.hline = p.p_m;
    for (Strategy st : list) {
      PDeltaCurve c = make_curve(st, p, p.v_grid, p.e_ref);
      PlotSeries ser;
      ser.label = strategy_name(st);
      auto pts = sample_curve(c, 0.0, std::numbers::pi, 361);
      for (const auto& cp : pts) ser.points.emplace_back(cp.delta, cp.pe);
      spec.series.push_back(std::move(ser));
    }
    std::ostringstream svg;
    write_svg_plot(svg, spec);
    write_file(g.out + ".svg", svg.str());
  }
  return 0;
}

// ---- limit ----

int cmd_limit(const GlobalOpts& g, const std::string& strategy, double id,
              double iq, double imax, double delta,
              std::optional<double> phi) {
  Strategy st = resolve_strategy(strategy);
  if (!(imax > 0.0)) throw ConfigError("--imax must be positive");
  DqPhasor in{id, iq};
  DqPhasor out{};
  if (st == Strategy::adaptive) {
    double ph = phi.has_value() ? *phi : phi_half_delta(delta);
    out = limit_adaptive(in, imax, delta, ph);
  } else {
    out = apply_limiter(st, in, imax, delta);
  }
  char buf[80];
  if (g.format == "json") {
    std::snprintf(buf, sizeof buf, "{\"id\": %.17g, \"iq\": %.17g}\n", out.d,
                  out.q);
  } else {
    std::snprintf(buf, sizeof buf, "id,iq\n%.17g,%.17g\n", out.d, out.q);
  }
  std::cout << buf;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vsgcl: transient stability of a grid-tied virtual synchronous "
      "generator under current limiting"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path,
                 "INI-style config file (built-in defaults when omitted)");
  app.add_option("--set", g.sets,
                 "override a config entry: section.key=value (repeatable)");
  app.add_option("--out", g.out, "write primary output to this path/prefix");
  app.add_option("--dt", g.dt, "integrator step override, s");
  app.add_option("--mode", g.mode, "rotor model: exact|classic")
      ->check(CLI::IsMember({"exact", "classic"}));
  app.add_option("--stride", g.stride, "record every N-th step");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  int rc = 0;

  auto* sim = app.add_subcommand("simulate",
                                 "simulate the configured sag scenario");
  std::string sim_strategy;
  sim->add_option("--strategy", sim_strategy,
                  "none|angle|d|q|adaptive (or *-priority forms)")
      ->required();
  sim->callback([&] { rc = cmd_simulate(g, sim_strategy); });

  auto* pd = app.add_subcommand("pdelta", "tabulate P-delta curves");
  std::string pd_strategies = "none,angle,d,q,adaptive";
  int pd_points = 721;
  double pd_dmax = std::numbers::pi;
  double pd_vg = 0.0;
  std::string pd_svg;
  pd->add_option("--strategies", pd_strategies, "comma-separated list");
  pd->add_option("--points", pd_points, "table size")->check(CLI::Range(2, 2000000));
  pd->add_option("--delta-max", pd_dmax, "upper angle bound, rad");
  pd->add_option("--vg", pd_vg, "grid magnitude override, pu");
  pd->add_option("--svg", pd_svg, "write <prefix>_<strategy>.svg plots");
  pd->callback([&] {
    rc = cmd_pdelta(g, pd_strategies, pd_points, pd_dmax, pd_vg, pd_svg);
  });

  auto* ep = app.add_subcommand("epac", "equal-area stability assessment");
  std::string ep_strategy;
  double ep_delta_c = std::numeric_limits<double>::quiet_NaN();
  ep->add_option("--strategy", ep_strategy, "limiting strategy")->required();
  ep->add_option("--delta-c", ep_delta_c,
                 "clearing angle, rad (default: angle reached when the "
                 "configured sag clears)");
  ep->callback([&] {
    std::optional<double> dc;
    if (std::isfinite(ep_delta_c)) dc = ep_delta_c;
    rc = cmd_epac(g, ep_strategy, dc);
  });

  auto* cc = app.add_subcommand("cca",
                                "critical clearing angle and time");
  std::string cc_strategy;
  double cc_fault_power = std::numeric_limits<double>::quiet_NaN();
  cc->add_option("--strategy", cc_strategy, "limiting strategy")->required();
  cc->add_option("--fault-power", cc_fault_power,
                 "override the during-fault curve with a constant power, pu");
  cc->callback([&] {
    std::optional<double> fp;
    if (std::isfinite(cc_fault_power)) fp = cc_fault_power;
    rc = cmd_cca(g, cc_strategy, fp);
  });

  auto* cmp = app.add_subcommand("compare",
                                 "run all strategies and tabulate verdicts");
  std::string cmp_strategies = "angle,d,q,adaptive";
  cmp->add_option("--strategies", cmp_strategies, "comma-separated list");
  cmp->callback([&] { rc = cmd_compare(g, cmp_strategies); });

  auto* lim = app.add_subcommand("limit", "evaluate one limiter application");
  std::string lim_strategy;
  double lim_id = 0.0, lim_iq = 0.0, lim_imax = 0.0;
  double lim_delta = 0.0;
  double lim_phi = std::numeric_limits<double>::quiet_NaN();
  lim->add_option("--strategy", lim_strategy, "limiting strategy")->required();
  lim->add_option("--id", lim_id, "d-axis reference, pu")->required();
  lim->add_option("--iq", lim_iq, "q-axis reference, pu")->required();
  lim->add_option("--imax", lim_imax, "current limit, pu")->required();
  lim->add_option("--delta", lim_delta, "rotor angle, rad (adaptive)");
  lim->add_option("--phi", lim_phi,
                  "saturation angle offset, rad (adaptive; default delta/2)");
  lim->callback([&] {
    std::optional<double> ph;
    if (std::isfinite(lim_phi)) ph = lim_phi;
    rc = cmd_limit(g, lim_strategy, lim_id, lim_iq, lim_imax, lim_delta, ph);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
