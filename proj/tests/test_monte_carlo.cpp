#include "d2dmm/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "d2dmm/analytic_se.hpp"
#include "d2dmm/params.hpp"
#include "d2dmm/power_control.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace d2dmm;

namespace {

double zscore(const MonteCarloEstimate& est, double reference) {
  return std::fabs(reference - est.mean) / est.std_error;
}

}  // namespace

TEST_CASE("simulated rates agree with the transform evaluation") {
  const SystemParams p = default_params();

  const auto cue = simulate_cue_se(p, 2000, 42, 1);
  CHECK(zscore(cue, cue_se(p).value) < 3.0);
  CHECK(cue.n_trials == 2000);
  CHECK(cue.ci95_low == cue.mean - 1.96 * cue.std_error);
  CHECK(cue.ci95_high == cue.mean + 1.96 * cue.std_error);

  const auto d2d = simulate_d2d_se(p, 2000, 43, 1);
  CHECK(zscore(d2d, d2d_se(p).value) < 3.0);
  CHECK(d2d.std_error > 0.0);
}

TEST_CASE("a fully inverted single-antenna link matches the closed chain") {
  // Full inversion pins the received signal at p_o regardless of the
  // serving distance, so the sample mean is well conditioned; a tiny
  // p_o keeps the link noise-dominated and the one-antenna gain linear.
  SystemParams p = default_params();
  p.lambda_d = 0.0;
  p.s_users = 1;
  p.n_antennas = 1;
  p.eta = 1.0;
  p.p_o = 5e-16;
  const auto est = simulate_cue_se(p, 10000, 47, 1);
  CHECK(zscore(est, cue_se(p).value) < 3.0);
}

TEST_CASE("an interference-free capped d2d link matches direct quadrature") {
  // With no interferers and the cap always binding, the rate is
  // E[log2(1 + c g)] over unit-exponential fading, a 1-D integral.
  SystemParams p = default_params();
  p.lambda_d = 0.0;
  p.s_users = 0;
  p.i_th = std::numeric_limits<double>::infinity();
  const double c =
      p.p_max_d * p.beta * std::pow(p.d_o, -p.alpha_d) / p.sigma2;
  const double expected =
      oracle::integrate(
          [c](double x) { return std::log1p(c * x) * std::exp(-x); }, 0.0,
          45.0, 0.0) /
      std::log(2.0);
  const auto est = simulate_d2d_se(p, 20000, 48, 1);
  CHECK(zscore(est, expected) < 3.0);
}

TEST_CASE("fixed seeds reproduce bitwise across thread counts and reruns") {
  const SystemParams p = default_params();
  const auto ref = simulate_cue_se(p, 400, 99, 1);
  for (int threads : {2, 3, 4}) {
    const auto est = simulate_cue_se(p, 400, 99, threads);
    CHECK(est.mean == ref.mean);
    CHECK(est.std_error == ref.std_error);
  }
  const auto rerun = simulate_cue_se(p, 400, 99, 1);
  CHECK(rerun.mean == ref.mean);
  CHECK(rerun.std_error == ref.std_error);
}

TEST_CASE("transmit-power draws follow the marginal laws") {
  const SystemParams p = default_params();

  const auto [cue, d2d] = simulate_mean_powers(p, 100000, 46, 1);
  CHECK(zscore(cue, avg_cue_power(p)) < 3.0);
  CHECK(zscore(d2d, mean_d2d_power(p)) < 3.0);

  // Two-sided Kolmogorov-Smirnov against the closed cdf at the 1% level;
  // the left limit handles the point mass at the cap.
  const long n = 100000;
  std::vector<double> s = sample_d2d_powers(p, n, 7);
  std::sort(s.begin(), s.end());
  double dist = 0.0;
  for (long i = 0; i < n; ++i) {
    const double hi = d2d_power_cdf(p, s[i]);
    const double lo = d2d_power_cdf(p, std::nextafter(s[i], 0.0));
    dist = std::max(dist, (i + 1.0) / n - hi);
    dist = std::max(dist, lo - static_cast<double>(i) / n);
  }
  CHECK(dist < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("degenerate control settings pin the drawn powers") {
  SystemParams p = default_params();
  p.i_th = std::numeric_limits<double>::infinity();
  for (double v : sample_d2d_powers(p, 100, 11)) CHECK(v == p.p_max_d);
  const auto capped = simulate_mean_powers(p, 1000, 12, 1).second;
  CHECK(capped.mean == doctest::Approx(p.p_max_d).epsilon(1e-12));
  CHECK(capped.std_error < 1e-8 * p.p_max_d);

  SystemParams q = default_params();
  q.eta = 0.0;  // constant transmit power p_o, far below the cap
  const auto open = simulate_mean_powers(q, 1000, 13, 1).first;
  CHECK(open.mean == doctest::Approx(q.p_o).epsilon(1e-12));
  CHECK(open.std_error < 1e-8 * q.p_o);
}

TEST_CASE("the error bar shrinks like the root of the trial count") {
  SystemParams p = default_params();
  p.lambda_d = 2.0 * p.lambda_m;
  p.s_users = 2;
  const double se1 = simulate_cue_se(p, 1000, 5, 1).std_error;
  const double se2 = simulate_cue_se(p, 4000, 5, 1).std_error;
  const double se3 = simulate_cue_se(p, 16000, 5, 1).std_error;
  CHECK(se2 / se1 > 0.5 / 1.3);
  CHECK(se2 / se1 < 0.5 * 1.3);
  CHECK(se3 / se2 > 0.5 / 1.3);
  CHECK(se3 / se2 < 0.5 * 1.3);
}

TEST_CASE("interference transforms match the analytic factors") {
  const SystemParams p = default_params();
  for (double t : {1e10, 1e12}) {
    const auto at_bs = simulate_laplace_bs_d2d_interference(p, t, 3000, 44, 1);
    CHECK(zscore(at_bs, xi2(p, t)) < 3.0);
    const auto at_rx = simulate_laplace_receiver_interference(p, t, 3000, 45, 1);
    CHECK(zscore(at_rx, xi4(p, t)) < 3.0);
  }
}

TEST_CASE("simulator argument guards") {
  const SystemParams p = default_params();
  CHECK_THROWS_AS(simulate_cue_se(p, 99, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_d2d_se(p, 100, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_mean_powers(p, 99, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_laplace_bs_d2d_interference(p, -1.0, 1000, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_laplace_receiver_interference(p, -1.0, 1000, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_d2d_powers(p, 0, 1), std::invalid_argument);

  SystemParams bad = p;
  bad.lambda_m = 0.0;
  CHECK_THROWS_AS(simulate_cue_se(bad, 1000, 1, 1), std::invalid_argument);
}
