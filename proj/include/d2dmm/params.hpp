#pragma once

// System parameter container with SI-unit canonical storage, validated
// defaults, dB/dBm conversions, and the flat key=value config format.
// dB and dBm forms exist only at the config/report boundary.

#include <string>
#include <utility>
#include <vector>

namespace d2dmm {

struct SystemParams {
  double lambda_m;       // MBS density, 1/m^2
  double lambda_d;       // D2D transmitter density, 1/m^2
  int n_antennas;        // N
  int s_users;           // S, CUEs served per cell
  double alpha_m;        // path-loss exponent towards MBS
  double alpha_d;        // path-loss exponent towards D2D receiver
  double beta;           // path-loss constant, applied as beta * r^-alpha
  double p_o;            // CUE open-loop power density, W
  double eta;            // path-loss compensation factor, [0, 1]
  double p_max_c;        // CUE max transmit power, W
  double p_max_d;        // D2D max transmit power, W
  double i_th;           // D2D interference threshold, W (may be +inf)
  double sigma2;         // noise power, W
  double bandwidth;      // Hz
  double d_o;            // D2D link distance, m
  double ref_d0;         // min distance, typical D2D interferer, m
  double ref_d1;         // min distance, CUE interferer at D2D receiver, m
  double ref_d2;         // min distance, D2D interferer at D2D receiver, m
  double p_f;            // fixed circuit power, W
  double zeta;           // power amplifier efficiency, (0, 1]
  double region_radius;  // simulation disc radius, m
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);  // watts > 0

// Thermal noise over the band: -170 dBm/Hz + 10 log10(bandwidth).
double noise_power(double bandwidth_hz);

// Baseline operating point (the default figure preset).
SystemParams default_params();

// Throws std::invalid_argument naming the first offending field.
void validate(const SystemParams& p);

// Same checks with s_users == 0 admitted: quantities that are linear in
// the load stay well defined when the cellular tier is empty.
void validate_allowing_empty_load(const SystemParams& p);

// Ordered key=value pairs collected from a config file and/or --set
// overrides; later entries win.
using ConfigOverlay = std::vector<std::pair<std::string, std::string>>;

// Parses flat `key = value` lines; '#' starts a comment.
ConfigOverlay read_config_file(const std::string& path);

// Defaults + overlay + convenience-key resolution + validation.
// Convenience keys: i_th_over_sigma2_db, p_max_c_dbm, p_max_d_dbm,
// lambda_d_over_lambda_m.  A convenience key conflicting with an
// explicitly set raw key is an error.
SystemParams resolve_params(const ConfigOverlay& overlay);

// Numeric field access by key (raw field names plus the convenience keys
// and lambda_d_over_lambda_m).  Used by sweeps and reports.
double get_param(const SystemParams& p, const std::string& key);
void set_param(SystemParams& p, const std::string& key, double value);

// Raw field names, in canonical order.
const std::vector<std::string>& param_keys();

}  // namespace d2dmm
