// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vsgcl/config.hpp"
#include "vsgcl/epac.hpp"
#include "vsgcl/pdelta.hpp"
#include "vsgcl/swing.hpp"

namespace vsgcl {

// All writers are deterministic: identical inputs produce identical bytes.
// Floating-point fields are printed with %.17g (lossless round-trip).

// Header: t,delta,omega,e,vg,id_ref,iq_ref,id,iq,imag,pe,qe,saturated
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

// Header: delta_rad,pe_pu,regime,strategy
void write_pdelta_csv(std::ostream& os,
                      const std::vector<CurvePoint>& points,
                      const std::string& strategy);

std::string trajectory_json(const Trajectory& t, const std::string& digest,
                            bool with_rows);

std::string pdelta_json(const std::vector<CurvePoint>& points,
                        const std::string& strategy,
                        const std::string& digest);

// Several curves in one document, under "curves".
std::string pdelta_set_json(
    const std::vector<std::pair<std::string, std::vector<CurvePoint>>>& set,
    const std::string& digest);

// Full equal-area report for one strategy/scenario.
struct EpacReport {
  std::string strategy;
  double delta_0;
  double delta_c;
  double delta_u;
  double a_acc;
  double a_dec;
  double margin;
  std::string verdict;
  double delta_cc;
  double t_cc;
};

void write_epac_csv(std::ostream& os, const EpacReport& r);
std::string epac_json(const EpacReport& r, const std::string& digest);

// One row of the strategy comparison table.
struct CompareRow {
  std::string strategy;
  std::string verdict;      // trajectory verdict
  double delta_peak;
  double i_peak;
  std::optional<double> a_acc, a_dec, margin;  // missing if EPAC failed
  std::optional<double> delta_cc, t_cc;
  std::string epac_verdict;
};

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);
void write_compare_table(std::ostream& os,
                         const std::vector<CompareRow>& rows);
std::string compare_json(const std::vector<CompareRow>& rows,
                         const std::string& digest);

// Minimal static SVG line plot.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<double> hline;  // horizontal marker (e.g. mechanical power)
};

void write_svg_plot(std::ostream& os, const PlotSpec& spec);

}  // namespace vsgcl
