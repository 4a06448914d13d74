#include "d2dmm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "d2dmm/analytic_ee.hpp"
#include "d2dmm/analytic_se.hpp"
#include "d2dmm/power_control.hpp"
#include "d2dmm/scale_properties.hpp"

namespace d2dmm {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

SweepCell value_cell(double v) { return {true, v, {}}; }
SweepCell error_cell(const std::string& msg) { return {false, 0.0, sanitize(msg)}; }

enum class McSource { kNone, kCue, kD2d };

// One analytic column plus, when the sweep simulates, the derived
// mean/CI columns obtained by rescaling the per-link rate estimate.
struct ColumnPlan {
  std::string label;
  double (*analytic)(const SystemParams&);
  McSource mc;
  double (*mc_scale)(const SystemParams&);
};

double eval_cue_se(const SystemParams& p) { return cue_se(p).value; }
double eval_d2d_se(const SystemParams& p) { return d2d_se(p).value; }
double unit_scale(const SystemParams&) { return 1.0; }
double cue_density(const SystemParams& p) { return p.s_users * p.lambda_m; }
double d2d_density(const SystemParams& p) { return p.lambda_d; }
double inv_cue_power(const SystemParams& p) { return 1.0 / cue_total_power(p); }
double inv_d2d_power(const SystemParams& p) { return 1.0 / d2d_total_power(p); }

void append_plans(const std::string& token, std::vector<ColumnPlan>& out) {
  if (token == "cue_se")
    out.push_back({"cue_se[bps/Hz]", eval_cue_se, McSource::kCue, unit_scale});
  else if (token == "d2d_se")
    out.push_back({"d2d_se[bps/Hz]", eval_d2d_se, McSource::kD2d, unit_scale});
  else if (token == "area_se_c")
    out.push_back({"area_se_c[bps/Hz/m^2]", area_se_cellular, McSource::kCue,
                   cue_density});
  else if (token == "area_se_d")
    out.push_back({"area_se_d[bps/Hz/m^2]", area_se_d2d, McSource::kD2d,
                   d2d_density});
  else if (token == "cue_ee")
    out.push_back({"cue_ee[bps/Hz/W]", cue_ee, McSource::kCue, inv_cue_power});
  else if (token == "d2d_ee")
    out.push_back({"d2d_ee[bps/Hz/W]", d2d_ee, McSource::kD2d, inv_d2d_power});
  else if (token == "bounds") {
    out.push_back({"cue_se_floor[bps/Hz]", lower_bound_cue_se, McSource::kNone,
                   unit_scale});
    out.push_back({"d2d_se_floor[bps/Hz]", lower_bound_d2d_se, McSource::kNone,
                   unit_scale});
  } else {
    throw std::invalid_argument("sweep: unknown metric '" + token + "'");
  }
}

std::vector<ColumnPlan> build_plans(const std::vector<std::string>& metrics) {
  std::vector<ColumnPlan> plans;
  const auto& tokens = metrics.empty() ? metric_tokens() : metrics;
  for (const auto& t : tokens) append_plans(t, plans);
  return plans;
}

std::string mc_label(const std::string& label, const char* suffix) {
  const auto bracket = label.find('[');
  return label.substr(0, bracket) + suffix + label.substr(bracket);
}

std::vector<std::string> build_header(const std::string& field,
                                      const std::vector<ColumnPlan>& plans,
                                      bool with_mc) {
  std::vector<std::string> header{field};
  for (const ColumnPlan& c : plans) {
    header.push_back(c.label);
    if (with_mc && c.mc != McSource::kNone) {
      header.push_back(mc_label(c.label, "_mc"));
      header.push_back(mc_label(c.label, "_mc_lo"));
      header.push_back(mc_label(c.label, "_mc_hi"));
    }
  }
  return header;
}

std::vector<std::string> base_meta(const SystemParams& p, bool with_mc,
                                   long trials, std::uint64_t seed) {
  std::vector<std::string> meta;
  meta.push_back(std::string("tool: d2dmm ") + kToolVersion);
  if (with_mc)
    meta.push_back("mc: trials=" + std::to_string(trials) +
                   " seed=" + std::to_string(seed));
  else
    meta.push_back("mc: off");
  for (const std::string& k : param_keys())
    meta.push_back("param " + k + " = " + fmt17(get_param(p, k)));
  return meta;
}

std::vector<SweepCell> evaluate_point(const SystemParams& pt,
                                      const std::vector<ColumnPlan>& plans,
                                      bool with_mc, long trials,
                                      std::uint64_t seed_cue,
                                      std::uint64_t seed_d2d, int mc_threads) {
  std::optional<MonteCarloEstimate> cue_run, d2d_run;
  std::string cue_err, d2d_err;
  if (with_mc) {
    auto needs = [&](McSource s) {
      return std::any_of(plans.begin(), plans.end(),
                         [&](const ColumnPlan& c) { return c.mc == s; });
    };
    if (needs(McSource::kCue)) {
      try {
        cue_run = simulate_cue_se(pt, trials, seed_cue, mc_threads);
      } catch (const std::exception& e) {
        cue_err = e.what();
      }
    }
    if (needs(McSource::kD2d)) {
      try {
        d2d_run = simulate_d2d_se(pt, trials, seed_d2d, mc_threads);
      } catch (const std::exception& e) {
        d2d_err = e.what();
      }
    }
  }

  std::vector<SweepCell> row;
  for (const ColumnPlan& c : plans) {
    try {
      row.push_back(value_cell(c.analytic(pt)));
    } catch (const std::exception& e) {
      row.push_back(error_cell(e.what()));
    }
    if (!with_mc || c.mc == McSource::kNone) continue;
    const auto& run = c.mc == McSource::kCue ? cue_run : d2d_run;
    const auto& err = c.mc == McSource::kCue ? cue_err : d2d_err;
    if (!run) {
      for (int k = 0; k < 3; ++k) row.push_back(error_cell(err));
      continue;
    }
    try {
      const double s = c.mc_scale(pt);
      row.push_back(value_cell(run->mean * s));
      row.push_back(value_cell(run->ci95_low * s));
      row.push_back(value_cell(run->ci95_high * s));
    } catch (const std::exception& e) {
      for (int k = 0; k < 3; ++k) row.push_back(error_cell(e.what()));
    }
  }
  return row;
}

std::vector<double> density_grid() {
  return {1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 30.0, 50.0, 70.0, 100.0};
}

}  // namespace

const std::vector<std::string>& metric_tokens() {
  static const std::vector<std::string> tokens = {
      "cue_se", "d2d_se", "area_se_c", "area_se_d",
      "cue_ee", "d2d_ee", "bounds"};
  return tokens;
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.values.empty())
    throw std::invalid_argument("sweep: value list is empty");
  for (double v : spec.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("sweep: swept values must be finite");
  if (spec.n_threads < 1)
    throw std::invalid_argument("sweep: n_threads must be >= 1");
  if (spec.with_mc && spec.mc_trials < 100)
    throw std::invalid_argument("sweep: mc_trials must be >= 100");
  validate_allowing_empty_load(spec.base);
  {
    SystemParams probe = spec.base;  // rejects unknown field names early
    set_param(probe, spec.field, spec.values[0]);
  }
  const std::vector<ColumnPlan> plans = build_plans(spec.metrics);

  SweepResult res;
  res.meta = base_meta(spec.base, spec.with_mc, spec.mc_trials, spec.seed);
  res.meta.insert(res.meta.begin() + 1, "swept: " + spec.field);
  res.header = build_header(spec.field, plans, spec.with_mc);

  const std::size_t n = spec.values.size();
  res.rows.assign(n, {});
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(spec.n_threads), n));
  const int mc_threads = n == 1 ? spec.n_threads : 1;
  // Interleaved point assignment: balances log-spaced grids whose cost
  // grows along the axis.  Results land by index, so output order and
  // content never depend on the worker count.
  auto eval_strided = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i < n; i += step) {
      SystemParams pt = spec.base;
      set_param(pt, spec.field, spec.values[i]);
      std::vector<SweepCell> row{value_cell(spec.values[i])};
      auto cells = evaluate_point(pt, plans, spec.with_mc, spec.mc_trials,
                                  spec.seed + 2 * i, spec.seed + 2 * i + 1,
                                  mc_threads);
      row.insert(row.end(), std::make_move_iterator(cells.begin()),
                 std::make_move_iterator(cells.end()));
      res.rows[i] = std::move(row);
    }
  };
  if (workers <= 1) {
    eval_strided(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(eval_strided, static_cast<std::size_t>(w),
                        static_cast<std::size_t>(workers));
    for (auto& th : pool) th.join();
  }
  return res;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {
      "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return names;
}

FigureSpec figure_preset(const std::string& name) {
  FigureSpec f;
  f.name = name;
  f.base = default_params();
  if (name == "fig2") {
    f.title = "area SE vs d2d density across cellular power-control factors";
    f.x_field = "lambda_d_over_lambda_m";
    f.x_values = density_grid();
    f.family_field = "eta";
    f.family_values = {0.5, 0.8, 1.0};
    f.metrics = {"area_se_c", "area_se_d"};
  } else if (name == "fig3" || name == "fig4") {
    f.title = std::string(name == "fig3" ? "area SE" : "EE") +
              " vs d2d density across d2d interference thresholds";
    f.x_field = "lambda_d_over_lambda_m";
    f.x_values = density_grid();
    f.family_field = "i_th_over_sigma2_db";
    f.family_values = {-20.0, 0.0, std::numeric_limits<double>::infinity()};
    if (name == "fig3")
      f.metrics = {"area_se_c", "area_se_d"};
    else
      f.metrics = {"cue_ee", "d2d_ee"};
  } else if (name == "fig5" || name == "fig6") {
    f.title = std::string(name == "fig5" ? "area SE" : "EE") +
              " vs antenna count across d2d power caps";
    set_param(f.base, "d_o", 50.0);
    set_param(f.base, "i_th_over_sigma2_db", 0.0);
    f.x_field = "n_antennas";
    f.x_values = {100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0};
    f.family_field = "p_max_d_dbm";
    f.family_values = {5.0, 15.0, 25.0};
    if (name == "fig5")
      f.metrics = {"area_se_c", "area_se_d", "cue_se", "d2d_se"};
    else
      f.metrics = {"cue_ee", "d2d_ee"};
  } else if (name == "fig7" || name == "fig8") {
    f.title = std::string(name == "fig7" ? "area SE" : "EE") +
              " vs d2d density across cellular loads";
    set_param(f.base, "d_o", 50.0);
    set_param(f.base, "eta", 0.9);
    set_param(f.base, "i_th_over_sigma2_db", 0.0);
    f.x_field = "lambda_d_over_lambda_m";
    f.x_values = density_grid();
    f.family_field = "s_users";
    f.family_values = {5.0, 10.0, 20.0, 40.0};
    if (name == "fig7")
      f.metrics = {"area_se_c", "area_se_d"};
    else
      f.metrics = {"cue_ee", "d2d_ee"};
  } else {
    throw std::invalid_argument("figure: unknown name '" + name +
                                "' (expected fig2..fig8)");
  }
  return f;
}

SweepResult run_figure(const FigureSpec& fig, bool with_mc, long mc_trials,
                       std::uint64_t seed, int n_threads) {
  if (fig.x_values.empty())
    throw std::invalid_argument("figure: x value list is empty");
  const bool has_family = !fig.family_field.empty();
  if (has_family && fig.family_values.empty())
    throw std::invalid_argument("figure: family value list is empty");
  const std::vector<double> family =
      has_family ? fig.family_values : std::vector<double>{0.0};

  SweepResult out;
  out.meta = base_meta(fig.base, with_mc, mc_trials, seed);
  out.meta.insert(out.meta.begin() + 1, "figure: " + fig.name + ", " + fig.title);
  out.meta.insert(out.meta.begin() + 2,
                  "swept: " + fig.x_field +
                      (has_family ? " by " + fig.family_field : ""));

  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    SweepSpec s;
    s.base = fig.base;
    if (has_family) set_param(s.base, fig.family_field, family[fi]);
    s.field = fig.x_field;
    s.values = fig.x_values;
    s.metrics = fig.metrics;
    s.with_mc = with_mc;
    s.mc_trials = mc_trials;
    s.seed = seed + 2 * fig.x_values.size() * fi;
    s.n_threads = n_threads;
    SweepResult part = run_sweep(s);
    if (out.header.empty()) {
      out.header = part.header;
      if (has_family)
        out.header.insert(out.header.begin(), fig.family_field);
    }
    for (auto& row : part.rows) {
      if (has_family) row.insert(row.begin(), value_cell(family[fi]));
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::string to_csv(const SweepResult& r) {
  std::string out;
  for (const auto& m : r.meta) out += "# " + m + "\n";
  for (std::size_t j = 0; j < r.header.size(); ++j) {
    if (j) out += ',';
    out += r.header[j];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      if (row[j].ok)
        out += fmt17(row[j].value);
      else
        out += "ERROR: " + sanitize(row[j].error);
    }
    out += '\n';
  }
  return out;
}

SweepResult parse_csv(const std::string& text) {
  SweepResult r;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos
                                                 : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    if (line[0] == '#') {
      r.meta.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2)
                                                         : line.substr(1));
      continue;
    }
    std::vector<std::string> cells;
    std::size_t c = 0;
    while (true) {
      const auto comma = line.find(',', c);
      cells.push_back(line.substr(
          c, comma == std::string::npos ? std::string::npos : comma - c));
      if (comma == std::string::npos) break;
      c = comma + 1;
    }
    if (!have_header) {
      r.header = std::move(cells);
      have_header = true;
      continue;
    }
    std::vector<SweepCell> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() + cell.size() && !cell.empty())
        row.push_back(value_cell(v));
      else if (cell.rfind("ERROR: ", 0) == 0)
        row.push_back(error_cell(cell.substr(7)));
      else
        row.push_back(error_cell(cell));
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

CompareReport compare_report(const SystemParams& p, long trials,
                             std::uint64_t seed, double rel_tol, double z_tol,
                             int n_threads) {
  validate_allowing_empty_load(p);
  if (trials < 100)
    throw std::invalid_argument("compare: trials must be >= 100");
  if (!(rel_tol >= 0.0) || !(z_tol >= 0.0))
    throw std::invalid_argument("compare: tolerances must be >= 0");

  CompareReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.rel_tol = rel_tol;
  rep.z_tol = z_tol;
  const bool no_d2d = p.lambda_d == 0.0;

  auto add = [&](const std::string& label, double analytic,
                 const MonteCarloEstimate& mc) {
    CompareLine ln;
    ln.label = label;
    ln.analytic = analytic;
    ln.has_mc = true;
    ln.mc = mc;
    ln.passed =
        std::fabs(analytic - mc.mean) <=
        std::max(rel_tol * std::fabs(analytic), z_tol * mc.std_error);
    rep.all_pass = rep.all_pass && ln.passed;
    rep.lines.push_back(std::move(ln));
  };
  auto skip = [&](const std::string& label) {
    CompareLine ln;
    ln.label = label;
    ln.skipped = true;
    rep.lines.push_back(std::move(ln));
  };
  auto info = [&](const std::string& label, double v) {
    CompareLine ln;
    ln.label = label;
    ln.is_info = true;
    ln.analytic = v;
    rep.lines.push_back(std::move(ln));
  };

  add("cue_se[bps/Hz]", cue_se(p).value,
      simulate_cue_se(p, trials, seed, n_threads));
  if (no_d2d)
    skip("d2d_se[bps/Hz]");
  else
    add("d2d_se[bps/Hz]", d2d_se(p).value,
        simulate_d2d_se(p, trials, seed + 1, n_threads));

  const auto powers = simulate_mean_powers(p, trials, seed + 2, n_threads);
  add("avg_cue_power[W]", avg_cue_power(p), powers.first);
  if (no_d2d)
    skip("mean_d2d_power[W]");
  else
    add("mean_d2d_power[W]", mean_d2d_power(p), powers.second);

  const double t_lo = 1e10;
  const double t_hi = 1e12;
  if (no_d2d) {
    skip("xi2(t=1e10)");
    skip("xi2(t=1e12)");
    skip("xi4(t=1e10)");
    skip("xi4(t=1e12)");
  } else {
    add("xi2(t=1e10)", xi2(p, t_lo),
        simulate_laplace_bs_d2d_interference(p, t_lo, trials, seed + 3,
                                             n_threads));
    add("xi2(t=1e12)", xi2(p, t_hi),
        simulate_laplace_bs_d2d_interference(p, t_hi, trials, seed + 4,
                                             n_threads));
    add("xi4(t=1e10)", xi4(p, t_lo),
        simulate_laplace_receiver_interference(p, t_lo, trials, seed + 5,
                                               n_threads));
    add("xi4(t=1e12)", xi4(p, t_hi),
        simulate_laplace_receiver_interference(p, t_hi, trials, seed + 6,
                                               n_threads));
  }

  info("avg_cue_power_verbatim[W]", avg_cue_power_verbatim(p));
  if (!no_d2d)
    info("mean_d2d_power_verbatim[W]", mean_d2d_power_verbatim(p));
  return rep;
}

std::string format_report(const CompareReport& r) {
  std::string out = "compare: trials=" + std::to_string(r.trials) +
                    " seed=" + std::to_string(r.seed) + " tol=max(" +
                    fmt17(100.0 * r.rel_tol) + "% rel, " + fmt17(r.z_tol) +
                    " se)\n";
  for (const auto& ln : r.lines) {
    out += "  " + ln.label + ": ";
    if (ln.skipped) {
      out += "skipped (no D2D)\n";
      continue;
    }
    out += "analytic " + fmt17(ln.analytic);
    if (ln.is_info) {
      out += " (info)\n";
      continue;
    }
    out += " mc " + fmt17(ln.mc.mean) + " se " + fmt17(ln.mc.std_error) +
           " ci95 [" + fmt17(ln.mc.ci95_low) + ", " + fmt17(ln.mc.ci95_high) +
           "] " + (ln.passed ? "pass" : "FAIL") + "\n";
  }
  out += std::string("result: ") + (r.all_pass ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace d2dmm
