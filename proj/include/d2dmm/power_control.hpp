#pragma once

// Uplink transmit-power laws and the distributions/moments they induce
// when the controlling distance is the Rayleigh-distributed distance to
// the nearest base station.

#include <functional>

#include "d2dmm/params.hpp"

namespace d2dmm {

// Mixed distribution of the D2D transmit power: a density on
// (0, p_max_d) plus an atom.  The degenerate i_th = 0 case is an atom of
// mass 1 at 0 W.
struct PowerDistribution {
  std::function<double(double)> density;  // W^-1, zero outside (0, p_max_d)
  double point_mass;                      // probability at atom_location
  double atom_location;                   // W; p_max_d normally, 0 if i_th=0
  double p_max_d;                         // W
  double varpi0;                          // pi*lambda_m*(beta*p_max_d/i_th)^(2/alpha_m)
};

// Power-cap cutoff distance r_o: beyond it the open-loop law saturates.
// For eta = 0 the IEEE pow semantics yield 0 / beta^{1/alpha_m} / +inf as
// p_max_c <,=,> p_o; callers that need eta = 0 handle it directly.
double cutoff_radius(const SystemParams& p);

// pi*lambda_m*(beta*x/i_th)^(2/alpha_m); the CCDF exponent of Lemma 1.
double varpi0(const SystemParams& p);
double delta_bar(const SystemParams& p, double x);

// Open-loop CUE power at the given serving distance.
double cue_tx_power(const SystemParams& p, double dist);

// Interference-capped D2D power at the given nearest-MBS distance.
double d2d_tx_power(const SystemParams& p, double dist);

// CDF of the D2D transmit power; right-continuous at p_max_d.
double d2d_power_cdf(const SystemParams& p, double x);

PowerDistribution d2d_power_distribution(const SystemParams& p);

// E[P_D^q], q >= 0: adaptive quadrature over the mixture, with the
// closed-form fast path at q = 2/alpha_m.
double frac_moment_d2d(const SystemParams& p, double q);

// E[P_D^q] in closed form via the lower incomplete gamma (exact for every
// q >= 0); the quadrature route above cross-validates it.
double frac_moment_d2d_closed(const SystemParams& p, double q);

// E[P_C^q] for q >= 0 over the Rayleigh serving-distance law, in closed
// form (lower incomplete gamma with argument pi*lambda_m*r_o^2).
double frac_moment_cue(const SystemParams& p, double q);

// Mean CUE transmit power (corrected incomplete-gamma argument
// pi*lambda_m*r_o^2), and the verbatim printed form kept for diagnosis.
double avg_cue_power(const SystemParams& p);
double avg_cue_power_verbatim(const SystemParams& p);

// Mean power of a D2D interferer whose nearest-MBS distance is floored at
// ref_d0, by CCDF integration.
double avg_d2d_power_interferer(const SystemParams& p);

// Mean D2D transmit power E[P_D]: the integral of x over the Lemma-1
// mixture.  The verbatim variant reproduces the published closed form,
// which is dimensionally inconsistent; it is reported for diagnosis only
// and never used in energy-efficiency results.
double mean_d2d_power(const SystemParams& p);
double mean_d2d_power_verbatim(const SystemParams& p);

}  // namespace d2dmm
