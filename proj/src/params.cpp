#include "d2dmm/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace d2dmm {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("params: " + field + " " + why);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("params: cannot parse value '" + text +
                                "' for key '" + key + "'");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  const double r = std::nearbyint(v);
  if (!(std::fabs(v - r) <= 0.0) || std::fabs(r) > 2e9)
    throw std::invalid_argument("params: key '" + key +
                                "' requires an integer, got '" + text + "'");
  return static_cast<int>(r);
}

bool close_rel(double a, double b) {
  if (a == b) return true;
  return std::fabs(a - b) <=
         1e-9 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::domain_error("watts_to_dbm: requires w > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

double noise_power(double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0))
    throw std::domain_error("noise_power: requires bandwidth > 0");
  return dbm_to_watts(-170.0 + 10.0 * std::log10(bandwidth_hz));
}

SystemParams default_params() {
  SystemParams p{};
  p.lambda_m = 1.0 / (500.0 * 500.0 * M_PI);
  p.lambda_d = 30.0 * p.lambda_m;
  p.n_antennas = 400;
  p.s_users = 20;
  p.alpha_m = 3.5;
  p.alpha_d = 4.0;
  // Free-space reference gain at 1 m for a 1 GHz carrier.
  const double q = kSpeedOfLight / (4.0 * M_PI * 1e9);
  p.beta = q * q;
  p.p_o = dbm_to_watts(-80.0);
  p.eta = 0.8;
  p.p_max_c = dbm_to_watts(23.0);
  p.p_max_d = dbm_to_watts(15.0);
  p.bandwidth = 5e6;
  p.sigma2 = noise_power(p.bandwidth);
  p.i_th = 10.0 * p.sigma2;  // 10 dB over noise
  p.d_o = 35.0;
  p.ref_d0 = 1.0;
  p.ref_d1 = 1.0;
  p.ref_d2 = 1.0;
  p.p_f = 0.1;
  p.zeta = 0.5;
  p.region_radius = 1e4;
  return p;
}

void validate(const SystemParams& p) {
  auto positive_finite = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive_finite(p.lambda_m)) fail("lambda_m", "must be > 0 and finite");
  if (!(p.lambda_d >= 0.0) || !std::isfinite(p.lambda_d))
    fail("lambda_d", "must be >= 0 and finite");
  if (p.s_users < 1) fail("s_users", "must be >= 1");
  if (p.n_antennas < p.s_users) fail("n_antennas", "must be >= s_users");
  if (!(p.alpha_m > 2.0) || !std::isfinite(p.alpha_m))
    fail("alpha_m", "must be > 2");
  if (!(p.alpha_d > 2.0) || !std::isfinite(p.alpha_d))
    fail("alpha_d", "must be > 2");
  if (!positive_finite(p.beta)) fail("beta", "must be > 0 and finite");
  if (!positive_finite(p.p_o)) fail("p_o", "must be > 0 and finite");
  if (!(p.eta >= 0.0 && p.eta <= 1.0)) fail("eta", "must be in [0, 1]");
  if (!positive_finite(p.p_max_c)) fail("p_max_c", "must be > 0 and finite");
  if (!positive_finite(p.p_max_d)) fail("p_max_d", "must be > 0 and finite");
  if (!(p.i_th >= 0.0)) fail("i_th", "must be >= 0 (inf allowed)");
  if (!positive_finite(p.sigma2)) fail("sigma2", "must be > 0 and finite");
  if (!positive_finite(p.bandwidth)) fail("bandwidth", "must be > 0 and finite");
  if (!positive_finite(p.d_o)) fail("d_o", "must be > 0 and finite");
  if (!positive_finite(p.ref_d0)) fail("ref_d0", "must be > 0 and finite");
  if (!positive_finite(p.ref_d1)) fail("ref_d1", "must be > 0 and finite");
  if (!positive_finite(p.ref_d2)) fail("ref_d2", "must be > 0 and finite");
  if (!(p.p_f >= 0.0) || !std::isfinite(p.p_f))
    fail("p_f", "must be >= 0 and finite");
  if (!(p.zeta > 0.0 && p.zeta <= 1.0)) fail("zeta", "must be in (0, 1]");
  if (!positive_finite(p.region_radius))
    fail("region_radius", "must be > 0 and finite");
}

void validate_allowing_empty_load(const SystemParams& p) {
  if (p.s_users == 0) {
    SystemParams q = p;
    q.s_users = 1;
    validate(q);
  } else {
    validate(p);
  }
}

ConfigOverlay read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("params: cannot open config file " + path);
  ConfigOverlay overlay;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("params: " + path + ":" +
                                  std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("params: " + path + ":" +
                                  std::to_string(lineno) +
                                  ": empty key or value");
    overlay.emplace_back(key, value);
  }
  return overlay;
}

const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys = {
      "lambda_m", "lambda_d", "n_antennas", "s_users", "alpha_m",
      "alpha_d",  "beta",     "p_o",        "eta",     "p_max_c",
      "p_max_d",  "i_th",     "sigma2",     "bandwidth", "d_o",
      "ref_d0",   "ref_d1",   "ref_d2",     "p_f",     "zeta",
      "region_radius"};
  return keys;
}

double get_param(const SystemParams& p, const std::string& key) {
  if (key == "lambda_m") return p.lambda_m;
  if (key == "lambda_d") return p.lambda_d;
  if (key == "n_antennas") return p.n_antennas;
  if (key == "s_users") return p.s_users;
  if (key == "alpha_m") return p.alpha_m;
  if (key == "alpha_d") return p.alpha_d;
  if (key == "beta") return p.beta;
  if (key == "p_o") return p.p_o;
  if (key == "eta") return p.eta;
  if (key == "p_max_c") return p.p_max_c;
  if (key == "p_max_d") return p.p_max_d;
  if (key == "i_th") return p.i_th;
  if (key == "sigma2") return p.sigma2;
  if (key == "bandwidth") return p.bandwidth;
  if (key == "d_o") return p.d_o;
  if (key == "ref_d0") return p.ref_d0;
  if (key == "ref_d1") return p.ref_d1;
  if (key == "ref_d2") return p.ref_d2;
  if (key == "p_f") return p.p_f;
  if (key == "zeta") return p.zeta;
  if (key == "region_radius") return p.region_radius;
  if (key == "lambda_d_over_lambda_m") return p.lambda_d / p.lambda_m;
  if (key == "i_th_over_sigma2_db")
    return 10.0 * std::log10(p.i_th / p.sigma2);
  if (key == "p_max_c_dbm") return watts_to_dbm(p.p_max_c);
  if (key == "p_max_d_dbm") return watts_to_dbm(p.p_max_d);
  throw std::invalid_argument("params: unknown key '" + key + "'");
}

void set_param(SystemParams& p, const std::string& key, double value) {
  if (key == "lambda_m") p.lambda_m = value;
  else if (key == "lambda_d") p.lambda_d = value;
  else if (key == "n_antennas") p.n_antennas = static_cast<int>(value);
  else if (key == "s_users") p.s_users = static_cast<int>(value);
  else if (key == "alpha_m") p.alpha_m = value;
  else if (key == "alpha_d") p.alpha_d = value;
  else if (key == "beta") p.beta = value;
  else if (key == "p_o") p.p_o = value;
  else if (key == "eta") p.eta = value;
  else if (key == "p_max_c") p.p_max_c = value;
  else if (key == "p_max_d") p.p_max_d = value;
  else if (key == "i_th") p.i_th = value;
  else if (key == "sigma2") p.sigma2 = value;
  else if (key == "bandwidth") p.bandwidth = value;
  else if (key == "d_o") p.d_o = value;
  else if (key == "ref_d0") p.ref_d0 = value;
  else if (key == "ref_d1") p.ref_d1 = value;
  else if (key == "ref_d2") p.ref_d2 = value;
  else if (key == "p_f") p.p_f = value;
  else if (key == "zeta") p.zeta = value;
  else if (key == "region_radius") p.region_radius = value;
  else if (key == "lambda_d_over_lambda_m") p.lambda_d = value * p.lambda_m;
  else if (key == "i_th_over_sigma2_db")
    p.i_th = std::isinf(value) && value > 0
                 ? std::numeric_limits<double>::infinity()
                 : std::pow(10.0, value / 10.0) * p.sigma2;
  else if (key == "p_max_c_dbm") p.p_max_c = dbm_to_watts(value);
  else if (key == "p_max_d_dbm") p.p_max_d = dbm_to_watts(value);
  else throw std::invalid_argument("params: unknown key '" + key + "'");
}

SystemParams resolve_params(const ConfigOverlay& overlay) {
  // Last occurrence of each key wins.
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : overlay) kv[k] = v;

  static const std::vector<std::string> convenience = {
      "i_th_over_sigma2_db", "p_max_c_dbm", "p_max_d_dbm",
      "lambda_d_over_lambda_m"};
  for (const auto& [k, v] : kv) {
    (void)v;
    if (std::find(param_keys().begin(), param_keys().end(), k) ==
            param_keys().end() &&
        std::find(convenience.begin(), convenience.end(), k) ==
            convenience.end())
      throw std::invalid_argument("params: unknown key '" + k + "'");
  }

  SystemParams p = default_params();

  // Raw keys first; bandwidth may retune the default sigma2.
  const bool sigma2_explicit = kv.count("sigma2") > 0;
  for (const std::string& key : param_keys()) {
    auto it = kv.find(key);
    if (it == kv.end()) continue;
    if (key == "n_antennas" || key == "s_users")
      set_param(p, key, parse_int(key, it->second));
    else
      set_param(p, key, parse_number(key, it->second));
  }
  if (!sigma2_explicit && kv.count("bandwidth"))
    p.sigma2 = noise_power(p.bandwidth);
  const bool i_th_explicit = kv.count("i_th") > 0;
  if (!i_th_explicit && (kv.count("bandwidth") || sigma2_explicit))
    p.i_th = 10.0 * p.sigma2;  // keep the default 10 dB ratio

  // Convenience keys win; a conflicting explicit raw key is an error.
  struct Pair { const char* conv; const char* raw; };
  for (const Pair& c : {Pair{"i_th_over_sigma2_db", "i_th"},
                        Pair{"p_max_c_dbm", "p_max_c"},
                        Pair{"p_max_d_dbm", "p_max_d"},
                        Pair{"lambda_d_over_lambda_m", "lambda_d"}}) {
    auto it = kv.find(c.conv);
    if (it == kv.end()) continue;
    const double conv_value = parse_number(c.conv, it->second);
    SystemParams trial = p;
    set_param(trial, c.conv, conv_value);
    const double derived = get_param(trial, c.raw);
    if (kv.count(c.raw) && !close_rel(derived, get_param(p, c.raw)))
      throw std::invalid_argument(
          std::string("params: '") + c.conv + "' conflicts with explicit '" +
          c.raw + "'");
    p = trial;
  }

  validate(p);
  return p;
}

}  // namespace d2dmm
