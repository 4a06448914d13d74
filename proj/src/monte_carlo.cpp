#include "d2dmm/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "d2dmm/rng.hpp"

namespace d2dmm {

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed-topology reduction: the bracketing never depends on how trials
// were distributed over threads, so sums are bitwise reproducible.
double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

MonteCarloEstimate estimate_from(std::vector<double>& samples) {
  const std::size_t n = samples.size();
  const double sum = pairwise_sum(samples.data(), n);
  for (double& v : samples) v *= v;
  const double sumsq = pairwise_sum(samples.data(), n);
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - sum * mean) / static_cast<double>(n - 1));
  const double se = std::sqrt(var / static_cast<double>(n));
  return {mean, se, static_cast<long>(n), mean - 1.96 * se, mean + 1.96 * se};
}

// Sum of power * fading * beta * r^-alpha over a Poisson field of the
// given intensity on the annulus (sqrt(r2_min), region radius).  The
// squared radii of a planar PPP form a 1-D PPP of rate pi*intensity, so
// exponential gaps enumerate the points in increasing distance order.
template <class PowerDraw>
double interference_field(PhiloxRng& rng, double intensity, double r2_min,
                          double r2_max, double beta, double alpha,
                          PowerDraw&& draw_power) {
  if (!(intensity > 0.0)) return 0.0;
  const double rate = kPi * intensity;
  double acc = 0.0;
  for (double u = r2_min + rng.exponential() / rate; u < r2_max;
       u += rng.exponential() / rate) {
    acc += draw_power(rng) * rng.exponential() * beta *
           std::pow(u, -0.5 * alpha);
  }
  return acc;
}

// Power-control laws precomputed for the hot loop, expressed on squared
// distances so a nearest-station draw needs no square root.  Every
// interferer carries its own serving-distance draw, matching the
// independence assumption of the closed forms.
struct PowerLaws {
  double pil;         // pi * lambda_m
  double open_scale;  // p_o * beta^-eta
  double open_exp;    // eta * alpha_m / 2
  double p_max_c;
  double d2d_scale;   // i_th / beta
  double d2d_exp;     // alpha_m / 2
  double p_max_d;

  explicit PowerLaws(const SystemParams& p)
      : pil(kPi * p.lambda_m),
        open_scale(p.p_o * std::pow(p.beta, -p.eta)),
        open_exp(0.5 * p.eta * p.alpha_m),
        p_max_c(p.p_max_c),
        d2d_scale(p.i_th / p.beta),
        d2d_exp(0.5 * p.alpha_m),
        p_max_d(p.p_max_d) {}

  double cue_at(double d2) const {
    return std::min(p_max_c, open_scale * std::pow(d2, open_exp));
  }
  double d2d_at(double d2) const {
    return std::min(p_max_d, d2d_scale * std::pow(d2, d2d_exp));
  }
  double cue_draw(PhiloxRng& rng) const {
    return cue_at(rng.exponential() / pil);
  }
  double d2d_draw(PhiloxRng& rng) const {
    return d2d_at(rng.exponential() / pil);
  }
};

void check_mc_args(const SystemParams& p, long n_trials, int n_threads) {
  validate_allowing_empty_load(p);
  if (n_trials < 100)
    throw std::invalid_argument(
        "monte carlo: n_trials must be >= 100 for a usable interval");
  if (n_threads < 1)
    throw std::invalid_argument("monte carlo: n_threads must be >= 1");
}

// Runs body(i, rng) for every trial index on the requested number of
// threads.  Trial i always gets stream i, so the work split cannot change
// any draw.
template <class Body>
void for_each_trial(long n_trials, std::uint64_t seed, int n_threads,
                    Body&& body) {
  n_threads = static_cast<int>(std::min<long>(n_threads, n_trials));

  auto fill = [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      PhiloxRng rng(seed, static_cast<std::uint64_t>(i));
      body(static_cast<std::size_t>(i), rng);
    }
  };
  if (n_threads == 1) {
    fill(0, n_trials);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  const long chunk = (n_trials + n_threads - 1) / n_threads;
  for (int k = 0; k < n_threads; ++k) {
    const long lo = k * chunk;
    const long hi = std::min(n_trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fill, lo, hi);
  }
  for (std::thread& th : pool) th.join();
}

template <class Trial>
MonteCarloEstimate run_trials(const SystemParams& p, long n_trials,
                              std::uint64_t seed, int n_threads,
                              Trial&& trial) {
  check_mc_args(p, n_trials, n_threads);
  std::vector<double> samples(static_cast<std::size_t>(n_trials));
  for_each_trial(n_trials, seed, n_threads,
                 [&](std::size_t i, PhiloxRng& rng) { samples[i] = trial(rng); });
  return estimate_from(samples);
}

}  // namespace

MonteCarloEstimate simulate_cue_se(const SystemParams& p, long n_trials,
                                   std::uint64_t seed, int n_threads) {
  const double shape = static_cast<double>(p.n_antennas - p.s_users + 1);
  const PowerLaws laws(p);
  return run_trials(p, n_trials, seed, n_threads, [&](PhiloxRng& rng) {
    const double r2_max = p.region_radius * p.region_radius;
    const double rho2 = rng.exponential() / laws.pil;
    const double signal = laws.cue_at(rho2) * rng.gamma(shape) * p.beta *
                          std::pow(rho2, -0.5 * p.alpha_m);
    const double i_m = interference_field(
        rng, p.s_users * p.lambda_m, rho2, r2_max, p.beta, p.alpha_m,
        [&](PhiloxRng& r) { return laws.cue_draw(r); });
    const double i_d = interference_field(
        rng, p.lambda_d, 0.0, r2_max, p.beta, p.alpha_m,
        [&](PhiloxRng& r) { return laws.d2d_draw(r); });
    return std::log1p(signal / (i_m + i_d + p.sigma2)) / std::numbers::ln2;
  });
}

MonteCarloEstimate simulate_d2d_se(const SystemParams& p, long n_trials,
                                   std::uint64_t seed, int n_threads) {
  const PowerLaws laws(p);
  return run_trials(p, n_trials, seed, n_threads, [&](PhiloxRng& rng) {
    const double r2_max = p.region_radius * p.region_radius;
    const double signal = laws.d2d_draw(rng) * rng.exponential() * p.beta *
                          std::pow(p.d_o, -p.alpha_d);
    const double j_m = interference_field(
        rng, p.s_users * p.lambda_m, p.ref_d1 * p.ref_d1, r2_max, p.beta,
        p.alpha_d, [&](PhiloxRng& r) { return laws.cue_draw(r); });
    const double j_d = interference_field(
        rng, p.lambda_d, p.ref_d2 * p.ref_d2, r2_max, p.beta, p.alpha_d,
        [&](PhiloxRng& r) { return laws.d2d_draw(r); });
    return std::log1p(signal / (j_m + j_d + p.sigma2)) / std::numbers::ln2;
  });
}

std::pair<MonteCarloEstimate, MonteCarloEstimate> simulate_mean_powers(
    const SystemParams& p, long n_trials, std::uint64_t seed, int n_threads) {
  check_mc_args(p, n_trials, n_threads);
  const PowerLaws laws(p);
  // Both draws share each trial's stream: the cellular one first.
  std::vector<double> cue(static_cast<std::size_t>(n_trials));
  std::vector<double> d2d(static_cast<std::size_t>(n_trials));
  for_each_trial(n_trials, seed, n_threads, [&](std::size_t i, PhiloxRng& rng) {
    cue[i] = laws.cue_draw(rng);
    d2d[i] = laws.d2d_draw(rng);
  });
  return {estimate_from(cue), estimate_from(d2d)};
}

MonteCarloEstimate simulate_laplace_bs_d2d_interference(
    const SystemParams& p, double t, long n_trials, std::uint64_t seed,
    int n_threads) {
  if (!(t >= 0.0))
    throw std::invalid_argument("laplace transform: t must be >= 0");
  const PowerLaws laws(p);
  return run_trials(p, n_trials, seed, n_threads, [&](PhiloxRng& rng) {
    const double i_d = interference_field(
        rng, p.lambda_d, 0.0, p.region_radius * p.region_radius, p.beta,
        p.alpha_m, [&](PhiloxRng& r) { return laws.d2d_draw(r); });
    return std::exp(-t * i_d);
  });
}

MonteCarloEstimate simulate_laplace_receiver_interference(
    const SystemParams& p, double t, long n_trials, std::uint64_t seed,
    int n_threads) {
  if (!(t >= 0.0))
    throw std::invalid_argument("laplace transform: t must be >= 0");
  const PowerLaws laws(p);
  return run_trials(p, n_trials, seed, n_threads, [&](PhiloxRng& rng) {
    const double r2_max = p.region_radius * p.region_radius;
    const double j_m = interference_field(
        rng, p.s_users * p.lambda_m, p.ref_d1 * p.ref_d1, r2_max, p.beta,
        p.alpha_d, [&](PhiloxRng& r) { return laws.cue_draw(r); });
    const double j_d = interference_field(
        rng, p.lambda_d, p.ref_d2 * p.ref_d2, r2_max, p.beta, p.alpha_d,
        [&](PhiloxRng& r) { return laws.d2d_draw(r); });
    return std::exp(-t * (j_m + j_d));
  });
}

std::vector<double> sample_d2d_powers(const SystemParams& p, long n,
                                      std::uint64_t seed) {
  validate_allowing_empty_load(p);
  if (n < 1) throw std::invalid_argument("sample_d2d_powers: n must be >= 1");
  const PowerLaws laws(p);
  std::vector<double> out(static_cast<std::size_t>(n));
  PhiloxRng rng(seed, 0);
  for (double& v : out) v = laws.d2d_draw(rng);
  return out;
}

}  // namespace d2dmm
