#include "d2dmm/analytic_se.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "d2dmm/power_control.hpp"
#include "d2dmm/quadrature.hpp"
#include "d2dmm/special_functions.hpp"

namespace d2dmm {
namespace {

// exp(-45) ~ 3e-20: integrals weighted by a unit-mean exponential factor
// are truncated at this depth, far below every quadrature tolerance.
constexpr double kExpCut = 45.0;

void require_t(double t) {
  if (!(t >= 0.0)) throw std::domain_error("analytic_se: requires t >= 0");
}

}  // namespace

double exclusion_ball_integral(double c, double d, double alpha) {
  if (!(c >= 0.0) || !(d >= 0.0))
    throw std::domain_error("exclusion_ball_integral: requires c, d >= 0");
  if (!(alpha > 2.0))
    throw std::domain_error("exclusion_ball_integral: requires alpha > 2");
  if (c == 0.0) return 0.0;
  const double a = 1.0 - 2.0 / alpha;
  const double b = 2.0 / alpha;
  // Complete beta B(a, b) by reflection; the substitutions s = r^2,
  // v = y/(1+y) reduce the integral to an incomplete beta in v.
  const double complete = M_PI / std::sin(2.0 * M_PI / alpha);
  double frac = 1.0;
  if (d > 0.0) {
    const double w = c * std::pow(d, -alpha);
    if (std::isfinite(w)) frac = regularized_incomplete_beta(a, b, w / (1.0 + w));
  }
  return std::pow(c, b) / alpha * complete * frac;
}

double xi1(const SystemParams& p, double t) {
  require_t(t);
  if (t == 0.0) return 0.0;
  const double pl = M_PI * p.lambda_m;
  const double ro = cutoff_radius(p);
  const double u_cap = pl * ro * ro;  // gap variable at the power cap
  const double gain = static_cast<double>(p.n_antennas - p.s_users + 1);
  const double log_t = std::log(t);
  const double log_beta = std::log(p.beta);
  const double log_pl = std::log(pl);
  const double half_am = 0.5 * p.alpha_m;

  // ln of t * gain * P_C(rho) * beta * rho^{-alpha_m} at x = pi*lambda_m*rho^2.
  // Evaluated in logs so the power-law branch cannot produce 0 * inf at
  // small x; overflow of the exp below saturates the kernel at 1.
  auto log_tz1 = [&](double x) {
    const double log_rho2 = std::log(x) - log_pl;
    const double log_pw =
        x < u_cap ? std::log(p.p_o) - p.eta * (log_beta - half_am * log_rho2)
                  : std::log(p.p_max_c);
    return log_t + std::log(gain) + log_pw + log_beta - half_am * log_rho2;
  };

  // Same-tier interference exponent: the thinned-PPP mass beyond the
  // serving distance, averaged over the interferers' own power mixture
  // (cap with mass e^{-u_cap}, power-law branch under the e^{-nu} weight).
  const QuadratureOptions inner_opts{1e-7, 0.0, 300};
  const double beta_pow = std::pow(p.beta, -p.eta);
  auto interference_exponent = [&](double x) {
    const double d = std::sqrt(x / pl);
    double total = 0.0;
    if (u_cap < kExpCut)
      total += std::exp(-u_cap) *
               exclusion_ball_integral(t * p.p_max_c * p.beta, d, p.alpha_m);
    const double upper = std::min(u_cap, kExpCut);
    if (upper > 0.0) {
      auto f = [&](double nu) {
        const double pw =
            p.p_o * beta_pow * std::pow(nu / pl, p.eta * half_am);
        return std::exp(-nu) *
               exclusion_ball_integral(t * pw * p.beta, d, p.alpha_m);
      };
      total += integrate_finite(f, 0.0, upper, inner_opts).value;
    }
    return 2.0 * M_PI * p.s_users * p.lambda_m * total;
  };

  auto outer = [&](double x) {
    const double kernel = -std::expm1(-std::exp(log_tz1(x)));
    if (kernel <= 0.0) return 0.0;  // underflowed: no signal mass here
    return kernel * std::exp(-interference_exponent(x) - x);
  };
  return integrate_finite(outer, 0.0, kExpCut, QuadratureOptions{1e-7, 0.0, 400})
      .value;
}

double xi2(const SystemParams& p, double t) {
  require_t(t);
  if (t == 0.0 || p.lambda_d == 0.0) return 1.0;
  const double q = 2.0 / p.alpha_m;
  const double c = M_PI * p.lambda_d * std::pow(p.beta, q) *
                   frac_moment_d2d_closed(p, q) * gamma_fn(1.0 + q) *
                   gamma_fn(1.0 - q);
  return std::exp(-c * std::pow(t, q));
}

double xi3(const SystemParams& p, double t) {
  require_t(t);
  const double w0 = varpi0(p);
  const double pl = M_PI * p.lambda_m;
  const double dfac = std::pow(p.d_o, -p.alpha_d);
  double total = 0.0;
  const double upper = std::min(w0, kExpCut);
  if (upper > 0.0) {
    auto f = [&](double x) {
      const double z = p.i_th * std::pow(x / pl, 0.5 * p.alpha_m) * dfac;
      return std::exp(-x) / (1.0 + t * z);
    };
    total += integrate_finite(f, 0.0, upper, QuadratureOptions{1e-11, 0.0, 400})
                 .value;
  }
  if (w0 < kExpCut)
    total += std::exp(-w0) / (1.0 + t * p.p_max_d * p.beta * dfac);
  return total;
}

double one_minus_xi3_over_t(const SystemParams& p, double t) {
  require_t(t);
  const double w0 = varpi0(p);
  const double pl = M_PI * p.lambda_m;
  const double dfac = std::pow(p.d_o, -p.alpha_d);
  double total = 0.0;
  const double upper = std::min(w0, kExpCut);
  if (upper > 0.0) {
    auto f = [&](double x) {
      const double z = p.i_th * std::pow(x / pl, 0.5 * p.alpha_m) * dfac;
      return std::exp(-x) * z / (1.0 + t * z);
    };
    total += integrate_finite(f, 0.0, upper, QuadratureOptions{1e-11, 0.0, 400})
                 .value;
  }
  if (w0 < kExpCut) {
    const double z = p.p_max_d * p.beta * dfac;
    total += std::exp(-w0) * z / (1.0 + t * z);
  }
  return total;
}

double xi4(const SystemParams& p, double t) {
  require_t(t);
  if (t == 0.0) return 1.0;
  const double q = 2.0 / p.alpha_d;
  const double mix =
      (p.s_users > 0 ? p.s_users * p.lambda_m * frac_moment_cue(p, q) : 0.0) +
      (p.lambda_d > 0.0 ? p.lambda_d * frac_moment_d2d_closed(p, q) : 0.0);
  if (mix == 0.0) return 1.0;
  const double c =
      M_PI * std::pow(p.beta, q) * gamma_fn(1.0 + q) * gamma_fn(1.0 - q) * mix;
  return std::exp(-c * std::pow(t, q));
}

// Both rate integrals share the same layout: a short linear head where
// the integrand is still near its t -> 0 limit, then a log-substituted
// tail out to where the noise factor e^{-sigma2 t} has died.  The split
// point only conditions the quadrature; accuracy comes from the panel
// tolerances on both pieces.

SpectralEfficiency cue_se(const SystemParams& p) {
  validate(p);
  const double gain = static_cast<double>(p.n_antennas - p.s_users + 1);
  const double z_typ =
      gain * p.p_max_c * p.beta * std::pow(M_PI * p.lambda_m, 0.5 * p.alpha_m);
  const double t_hi = kExpCut / p.sigma2;
  const double t_split = std::min(1e-8 / z_typ, 0.5 * t_hi);

  auto head_f = [&](double t) {
    return xi1(p, t) / t * xi2(p, t) * std::exp(-p.sigma2 * t);
  };
  const auto head =
      integrate_finite(head_f, 0.0, t_split, QuadratureOptions{1e-4, 0.0, 60});
  auto tail_f = [&](double tau) {
    const double t = std::exp(tau);
    return xi1(p, t) * xi2(p, t) * std::exp(-p.sigma2 * t);
  };
  const auto tail = integrate_finite(tail_f, std::log(t_split), std::log(t_hi),
                                     QuadratureOptions{1e-6, 0.0, 250});
  const double ln2 = std::log(2.0);
  return {(head.value + tail.value) / ln2, (head.error + tail.error) / ln2};
}

SpectralEfficiency d2d_se(const SystemParams& p) {
  validate(p);
  const double z_typ =
      p.beta * mean_d2d_power(p) * std::pow(p.d_o, -p.alpha_d);
  if (!(z_typ > 0.0)) return {0.0, 0.0};  // silenced tier (i_th = 0)
  const double t_hi = kExpCut / p.sigma2;
  const double t_split = std::min(1e-8 / z_typ, 0.5 * t_hi);

  auto head_f = [&](double t) {
    return one_minus_xi3_over_t(p, t) * xi4(p, t) * std::exp(-p.sigma2 * t);
  };
  const auto head =
      integrate_finite(head_f, 0.0, t_split, QuadratureOptions{1e-8, 0.0, 100});
  auto tail_f = [&](double tau) {
    const double t = std::exp(tau);
    return t * one_minus_xi3_over_t(p, t) * xi4(p, t) *
           std::exp(-p.sigma2 * t);
  };
  const auto tail = integrate_finite(tail_f, std::log(t_split), std::log(t_hi),
                                     QuadratureOptions{1e-8, 0.0, 400});
  const double ln2 = std::log(2.0);
  return {(head.value + tail.value) / ln2, (head.error + tail.error) / ln2};
}

double area_se_cellular(const SystemParams& p) {
  if (p.s_users == 0) return 0.0;  // no cellular transmitters at all
  return cue_se(p).value * p.s_users * p.lambda_m;
}

double area_se_d2d(const SystemParams& p) {
  if (p.lambda_d == 0.0) return 0.0;
  return d2d_se(p).value * p.lambda_d;
}

}  // namespace d2dmm
