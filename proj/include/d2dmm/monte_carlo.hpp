#pragma once

// Stochastic network simulator, independent of the transform-based
// evaluation chain.  Each trial realizes the typical link plus Poisson
// fields of interferers with their own power-control draws and
// per-link fading, under the same independence assumptions the
// closed-form results rest on.
//
// Determinism contract: a fixed seed yields a bitwise-identical estimate
// for any n_threads, because trial i always consumes counter stream i of
// the block-cipher RNG and the reduction tree over trial results has a
// fixed topology.  Interferer fields are truncated at
// params.region_radius; with path-loss exponents > 2 the neglected
// far-field mean is below 0.1% of the interference at the default
// densities, and no compensation is applied.

#include <cstdint>
#include <utility>
#include <vector>

#include "d2dmm/params.hpp"

namespace d2dmm {

struct MonteCarloEstimate {
  double mean;
  double std_error;  // sample standard deviation / sqrt(n_trials)
  long n_trials;
  double ci95_low;   // mean - 1.96 * std_error
  double ci95_high;  // mean + 1.96 * std_error
};

// Mean uplink spectral efficiency of the typical cellular user, bps/Hz.
// Throws std::invalid_argument for n_trials < 100 (the normal-theory
// interval would be meaningless).
MonteCarloEstimate simulate_cue_se(const SystemParams& p, long n_trials,
                                   std::uint64_t seed, int n_threads = 1);

// Mean spectral efficiency of the typical D2D link, bps/Hz.
MonteCarloEstimate simulate_d2d_se(const SystemParams& p, long n_trials,
                                   std::uint64_t seed, int n_threads = 1);

// Mean transmit powers (cellular, D2D) in W, sampled from the
// power-control laws over the serving-distance law.
std::pair<MonteCarloEstimate, MonteCarloEstimate> simulate_mean_powers(
    const SystemParams& p, long n_trials, std::uint64_t seed,
    int n_threads = 1);

// E[exp(-t I)] for the D2D interference field seen at the typical base
// station (exponent alpha_m, no minimum distance).
MonteCarloEstimate simulate_laplace_bs_d2d_interference(
    const SystemParams& p, double t, long n_trials, std::uint64_t seed,
    int n_threads = 1);

// E[exp(-t (J_M + J_D))] for the joint interference at the typical D2D
// receiver (exponent alpha_d, minimum distances ref_d1 / ref_d2).
MonteCarloEstimate simulate_laplace_receiver_interference(
    const SystemParams& p, double t, long n_trials, std::uint64_t seed,
    int n_threads = 1);

// Raw draws of the D2D transmit power, for distribution-level checks.
std::vector<double> sample_d2d_powers(const SystemParams& p, long n,
                                      std::uint64_t seed);

}  // namespace d2dmm
