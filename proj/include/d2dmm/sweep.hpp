#pragma once

// Parameter sweeps over the analytic chain with optional simulator
// columns, the preset operating points of the reference figures, CSV
// emission, and the analytic-vs-simulated comparison report.
//
// CSV cells carry 17 significant digits, so reparsing reproduces every
// double bitwise.  A point whose evaluation throws is recorded as an
// in-row error cell and the sweep continues.

#include <cstdint>
#include <string>
#include <vector>

#include "d2dmm/monte_carlo.hpp"
#include "d2dmm/params.hpp"

namespace d2dmm {

inline constexpr char kToolVersion[] = "1.0.0";

// Metric request tokens: cue_se, d2d_se, area_se_c, area_se_d, cue_ee,
// d2d_ee, bounds.  "bounds" expands to the closed-form rate floors of
// the two tiers; every other token pairs an analytic column with
// simulator columns (mean and 95% CI) when the sweep has mc enabled.
const std::vector<std::string>& metric_tokens();

struct SweepSpec {
  SystemParams base;
  std::string field;                 // any key set_param accepts
  std::vector<double> values;        // nonempty, all finite
  std::vector<std::string> metrics;  // empty = all tokens
  bool with_mc = false;
  long mc_trials = 20000;
  std::uint64_t seed = 1;
  int n_threads = 1;
};

struct SweepCell {
  bool ok = false;
  double value = 0.0;
  std::string error;  // set when !ok
};

struct SweepResult {
  std::vector<std::string> meta;    // '#' metadata lines, prefix stripped
  std::vector<std::string> header;  // column labels, units in brackets
  std::vector<std::vector<SweepCell>> rows;
};

// One row per swept value, in sweep order.  Points are evaluated in
// parallel when n_threads > 1 with output identical to the serial run;
// a single-point sweep gives its thread budget to the simulator instead.
// Simulator seeds are seed + 2i (cellular run) and seed + 2i + 1 (d2d
// run) for point index i, so adjacent points never share streams.
SweepResult run_sweep(const SweepSpec& spec);

struct FigureSpec {
  std::string name;                   // fig2 .. fig8
  std::string title;                  // one-line description
  SystemParams base;
  std::string x_field;
  std::vector<double> x_values;
  std::string family_field;           // empty for single-curve figures
  std::vector<double> family_values;
  std::vector<std::string> metrics;
};

// Preset axes and operating points of the reference figures fig2..fig8.
// Throws std::invalid_argument for any other name.
FigureSpec figure_preset(const std::string& name);
const std::vector<std::string>& figure_names();

// Family-major expansion of a figure into rows; the family field leads
// the header when present.  Seeds advance by 2 * x_values.size() per
// family member so every point keeps a distinct seed pair.
SweepResult run_figure(const FigureSpec& fig, bool with_mc, long mc_trials,
                       std::uint64_t seed, int n_threads);

// '#' metadata lines, one header row, comma-separated %.17g cells; error
// cells emit "ERROR: <message>" with delimiters replaced by ';'.
std::string to_csv(const SweepResult& r);

// Inverse of to_csv: a cell that fully parses as a double is a value
// cell, anything else is an error cell holding the raw text.
SweepResult parse_csv(const std::string& text);

struct CompareLine {
  std::string label;
  bool is_info = false;  // documentation-only value, no verdict
  bool skipped = false;  // reported "skipped (no D2D)"
  bool passed = false;
  double analytic = 0.0;
  bool has_mc = false;
  MonteCarloEstimate mc{};
};

struct CompareReport {
  std::vector<CompareLine> lines;
  bool all_pass = true;
  long trials = 0;
  std::uint64_t seed = 0;
  double rel_tol = 0.05;
  double z_tol = 3.0;
};

// Analytic vs simulated rates, mean transmit powers, and interference
// transforms at spot frequencies.  A line passes within
// max(rel_tol * |analytic|, z_tol * std_error); with lambda_d == 0 the
// d2d-tier lines are skipped rather than failed.  The printed-form
// power averages are included as info lines for documentation.
CompareReport compare_report(const SystemParams& p, long trials,
                             std::uint64_t seed, double rel_tol = 0.05,
                             double z_tol = 3.0, int n_threads = 1);

// Fixed layout, %.17g values, no timestamps: identical bytes whenever
// the inputs and seed are identical.
std::string format_report(const CompareReport& r);

}  // namespace d2dmm
