// Command-line front end: parameter sweeps and figure presets to CSV,
// analytic-vs-simulation comparison reports, closed-form bound factors,
// and resolved-parameter dumps.  Exit code 0 means every requested cell
// evaluated (and, for compare, every check passed).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d2dmm/params.hpp"
#include "d2dmm/scale_properties.hpp"
#include "d2dmm/sweep.hpp"

namespace {

using namespace d2dmm;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts* c) {
  cmd->add_option("--config", c->config_path,
                  "Flat key = value parameter file");
  cmd->add_option("--set", c->sets,
                  "Override one parameter, key=value (repeatable)")
      ->type_name("KEY=VALUE");
  cmd->add_option("-o,--out", c->out_path,
                  "Output file (default: stdout)");
}

SystemParams resolve(const CommonOpts& c) {
  ConfigOverlay overlay;
  if (!c.config_path.empty()) overlay = read_config_file(c.config_path);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--set expects key=value, got: " + kv);
    overlay.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return resolve_params(overlay);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    const std::string tok = list.substr(start, end - start);
    char* rest = nullptr;
    const double v = std::strtod(tok.c_str(), &rest);
    if (tok.empty() || rest != tok.c_str() + tok.size())
      throw std::invalid_argument("bad value in list: '" + tok + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::vector<std::string> parse_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    out.push_back(list.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Any error cell still produces a CSV, but the process reports failure.
int emit_csv(const SweepResult& r, const std::string& out_path) {
  write_out(out_path, to_csv(r));
  for (const auto& row : r.rows)
    for (const auto& c : row)
      if (!c.ok) return 1;
  return 0;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Exact uplink rate and energy-efficiency analysis of a "
      "D2D-underlaid massive-MIMO cellular network, cross-checked by "
      "a deterministic Monte Carlo simulator."};
  app.set_version_flag("--version", std::string("d2dmm ") + kToolVersion);
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Sweep one parameter and tabulate metrics as CSV");
  CommonOpts sweep_c;
  std::string field, values_arg, metrics_arg;
  bool no_mc = false;
  long mc_trials = 20000;
  std::uint64_t seed = 1;
  int threads = 1;
  sweep->add_option("--field", field, "Parameter key to sweep")->required();
  sweep->add_option("--values", values_arg, "Comma-separated sweep values")
      ->required();
  sweep->add_option("--metrics", metrics_arg,
                    "Comma-separated metric tokens (default: all)");
  sweep->add_flag("--no-mc", no_mc, "Skip the Monte Carlo columns");
  sweep->add_option("--mc-trials", mc_trials, "Trials per Monte Carlo run");
  sweep->add_option("--seed", seed, "Base seed for the simulator");
  sweep->add_option("--threads", threads, "Worker threads");
  add_common(sweep, &sweep_c);
  sweep->callback([&] {
    SweepSpec s;
    s.base = resolve(sweep_c);
    s.field = field;
    s.values = parse_values(values_arg);
    if (!metrics_arg.empty()) s.metrics = parse_tokens(metrics_arg);
    s.with_mc = !no_mc;
    s.mc_trials = mc_trials;
    s.seed = seed;
    s.n_threads = threads;
    std::exit(emit_csv(run_sweep(s), sweep_c.out_path));
  });

  // figure
  auto* figure = app.add_subcommand(
      "figure", "Reproduce a preset figure's data as CSV");
  CommonOpts figure_c;
  std::string fig_name;
  bool fig_no_mc = false;
  long fig_trials = 20000;
  std::uint64_t fig_seed = 1;
  int fig_threads = 1;
  figure
      ->add_option("name", fig_name,
                   "Preset name: fig2 fig3 fig4 fig5 fig6 fig7 fig8")
      ->required();
  figure->add_flag("--no-mc", fig_no_mc, "Skip the Monte Carlo columns");
  figure->add_option("--mc-trials", fig_trials,
                     "Trials per Monte Carlo run");
  figure->add_option("--seed", fig_seed, "Base seed for the simulator");
  figure->add_option("--threads", fig_threads, "Worker threads");
  add_common(figure, &figure_c);
  figure->callback([&] {
    const FigureSpec f = figure_preset(fig_name);
    std::exit(emit_csv(
        run_figure(f, !fig_no_mc, fig_trials, fig_seed, fig_threads),
        figure_c.out_path));
  });

  // compare
  auto* compare = app.add_subcommand(
      "compare",
      "Check the analytic expressions against the simulator");
  CommonOpts compare_c;
  long cmp_trials = 20000;
  std::uint64_t cmp_seed = 1;
  int cmp_threads = 1;
  double rel_tol = 0.05, z_tol = 3.0;
  compare->add_option("--trials", cmp_trials, "Monte Carlo trials per line");
  compare->add_option("--seed", cmp_seed, "Base seed for the simulator");
  compare->add_option("--threads", cmp_threads, "Worker threads");
  compare->add_option("--rel-tol", rel_tol, "Relative tolerance");
  compare->add_option("--z-tol", z_tol,
                      "Allowed deviation in standard errors");
  add_common(compare, &compare_c);
  compare->callback([&] {
    const auto report = compare_report(resolve(compare_c), cmp_trials,
                                       cmp_seed, rel_tol, z_tol,
                                       cmp_threads);
    write_out(compare_c.out_path, format_report(report));
    std::exit(report.all_pass ? 0 : 1);
  });

  // bounds
  auto* bounds = app.add_subcommand(
      "bounds",
      "Print the closed-form rate floors and density thresholds");
  CommonOpts bounds_c;
  double rate_floor = 1.0;
  bounds->add_option("--rate-floor", rate_floor,
                     "Rate target for the density inversion, bps/Hz");
  add_common(bounds, &bounds_c);
  bounds->callback([&] {
    const SystemParams p = resolve(bounds_c);
    const auto cf = x2_x3(p);
    const auto df = x4_x5_x6(p);
    std::string text;
    text += "x1 = " + fmt17(x1(p)) + "\n";
    text += "x2 = " + fmt17(cf.x2) + "\n";
    text += "x3 = " + fmt17(cf.x3) + "\n";
    text += "x4 = " + fmt17(df.x4) + "\n";
    text += "x5 = " + fmt17(df.x5) + "\n";
    text += "x6 = " + fmt17(df.x6) + "\n";
    text += "cue_se_floor[bps/Hz] = " + fmt17(lower_bound_cue_se(p)) + "\n";
    text += "d2d_se_floor[bps/Hz] = " + fmt17(lower_bound_d2d_se(p)) + "\n";
    text += "rate_floor[bps/Hz] = " + fmt17(rate_floor) + "\n";
    text += "max_lambda_d_cellular[1/m^2] = " +
            fmt17(max_d2d_density_cellular(p, rate_floor)) + "\n";
    text += "max_lambda_d_cellular_exact[1/m^2] = " +
            fmt17(max_d2d_density_cellular_exact(p, rate_floor)) + "\n";
    text += "max_lambda_d_d2d[1/m^2] = " +
            fmt17(max_d2d_density_d2d(p, rate_floor)) + "\n";
    write_out(bounds_c.out_path, text);
    std::exit(0);
  });

  // params
  auto* params = app.add_subcommand(
      "params",
      "Print the resolved parameter set, loadable back via --config");
  CommonOpts params_c;
  add_common(params, &params_c);
  params->callback([&] {
    const SystemParams p = resolve(params_c);
    std::string text;
    for (const auto& key : param_keys())
      text += key + " = " + fmt17(get_param(p, key)) + "\n";
    write_out(params_c.out_path, text);
    std::exit(0);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
