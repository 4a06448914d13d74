#include "d2dmm/scale_properties.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "d2dmm/power_control.hpp"
#include "d2dmm/special_functions.hpp"

namespace d2dmm {

namespace {

constexpr double kPi = std::numbers::pi;

// integral_d^inf (max(d, r))^-alpha r dr = d^(2-alpha) (1/2 + 1/(alpha-2)),
// the mean path-gain ring sum around a receiver with minimum distance d.
double ring_factor(double d, double alpha) {
  return std::pow(d, 2.0 - alpha) * (0.5 + 1.0 / (alpha - 2.0));
}

// E[ln x] for x ~ Exp(1) truncated to (0, w):
// integral_0^w ln(x) e^-x dx = -euler_gamma - e^-w ln(w) - E1(w).
double truncated_exp_log_moment(double w) {
  return -euler_gamma - std::exp(-w) * std::log(w) - exp_integral_e1(w);
}

}  // namespace

double x1(const SystemParams& p) {
  validate_allowing_empty_load(p);
  if (!(p.eta > 0.0))
    throw std::domain_error(
        "x1: eta must be > 0 so the power-cap radius is finite");
  const double r_o = cutoff_radius(p);
  const double u = kPi * p.lambda_m * r_o * r_o;
  const double e_u = std::exp(-u);
  const double log_pil = std::log(kPi * p.lambda_m);
  const double open_loop = p.p_o * std::pow(p.beta, -p.eta);
  // Geometric mean of P_C * beta * rho^-alpha_m over the serving distance
  // rho, the cap region contributing through exp(-u).  The trailing group
  // is -eta alpha_m E[ln rho | rho < r_o] P(rho < r_o).
  const double log_x1 =
      std::log(p.p_max_c / open_loop) * e_u + std::log(open_loop * p.beta) +
      0.5 * p.alpha_m * (euler_gamma + log_pil) -
      0.5 * p.eta * p.alpha_m *
          (euler_gamma + exp_integral_e1(u) + 2.0 * e_u * std::log(r_o) +
           log_pil);
  return std::exp(log_x1);
}

CellularBoundFactors x2_x3(const SystemParams& p) {
  validate_allowing_empty_load(p);
  if (!(p.alpha_m < 4.0))
    throw std::domain_error(
        "x2_x3: alpha_m must lie in (2, 4) for a finite distance-averaged "
        "in-cell interference mean");
  const double pil = kPi * p.lambda_m;
  // E[rho^(2-alpha_m)] over the Rayleigh serving distance has the closed
  // form (pi lambda_m)^((alpha_m-2)/2) Gamma(2 - alpha_m/2).
  const double x2 = 2.0 * kPi * p.s_users * p.lambda_m * p.beta *
                        avg_cue_power(p) / (p.alpha_m - 2.0) *
                        std::pow(pil, 0.5 * p.alpha_m - 1.0) *
                        gamma_fn(2.0 - 0.5 * p.alpha_m) +
                    p.sigma2;
  const double x3 = 2.0 * kPi * p.beta * ring_factor(p.ref_d0, p.alpha_m) *
                    avg_d2d_power_interferer(p);
  return {x2, x3};
}

D2dBoundFactors x4_x5_x6(const SystemParams& p) {
  validate_allowing_empty_load(p);
  double x4 = 0.0;
  if (p.i_th > 0.0) {
    double mean_log_pd;
    if (std::isinf(p.i_th)) {
      mean_log_pd = std::log(p.p_max_d);
    } else {
      const double w = varpi0(p);
      const double e_w = std::exp(-w);
      mean_log_pd =
          std::log(p.i_th / p.beta) * (1.0 - e_w) +
          0.5 * p.alpha_m *
              (truncated_exp_log_moment(w) -
               std::log(kPi * p.lambda_m) * (1.0 - e_w)) +
          std::log(p.p_max_d) * e_w;
    }
    // E[ln g] = -euler_gamma for the unit-exponential link gain.
    x4 = std::exp(mean_log_pd + std::log(p.beta) -
                  p.alpha_d * std::log(p.d_o) - euler_gamma);
  }
  const double x5 =
      2.0 * kPi * p.beta * avg_cue_power(p) * ring_factor(p.ref_d1, p.alpha_d);
  const double x6 = 2.0 * kPi * p.beta * avg_d2d_power_interferer(p) *
                    ring_factor(p.ref_d2, p.alpha_d);
  return {x4, x5, x6};
}

double lower_bound_cue_se(const SystemParams& p) {
  const double gain = static_cast<double>(p.n_antennas - p.s_users + 1);
  const CellularBoundFactors f = x2_x3(p);
  return std::log1p(gain * x1(p) / (f.x2 + p.lambda_d * f.x3)) /
         std::numbers::ln2;
}

double lower_bound_d2d_se(const SystemParams& p) {
  const D2dBoundFactors f = x4_x5_x6(p);
  if (f.x4 == 0.0) return 0.0;
  const double denom =
      p.s_users * p.lambda_m * f.x5 + p.lambda_d * f.x6 + p.sigma2;
  return std::log1p(f.x4 / denom) / std::numbers::ln2;
}

namespace {

double cellular_density_bound(const SystemParams& p, double r_th,
                              double gain) {
  if (!(r_th > 0.0))
    throw std::invalid_argument("density bound: r_th must be > 0");
  const CellularBoundFactors f = x2_x3(p);
  const double num = gain * x1(p) / std::expm1(r_th * std::numbers::ln2) - f.x2;
  if (!(num > 0.0)) return 0.0;
  if (f.x3 == 0.0) return std::numeric_limits<double>::infinity();
  return num / f.x3;
}

}  // namespace

double max_d2d_density_cellular(const SystemParams& p, double r_th) {
  const double gain = static_cast<double>(p.n_antennas - p.s_users + 1);
  return cellular_density_bound(p, r_th, gain);
}

double max_d2d_density_cellular_exact(const SystemParams& p, double r_th) {
  const double gain =
      std::exp(digamma(static_cast<double>(p.n_antennas - p.s_users + 1)));
  return cellular_density_bound(p, r_th, gain);
}

double max_d2d_density_d2d(const SystemParams& p, double r_th) {
  if (!(r_th > 0.0))
    throw std::invalid_argument("density bound: r_th must be > 0");
  const D2dBoundFactors f = x4_x5_x6(p);
  const double num = f.x4 / std::expm1(r_th * std::numbers::ln2) -
                     p.s_users * p.lambda_m * f.x5 - p.sigma2;
  if (!(num > 0.0)) return 0.0;
  if (f.x6 == 0.0) return std::numeric_limits<double>::infinity();
  return num / f.x6;
}

}  // namespace d2dmm
