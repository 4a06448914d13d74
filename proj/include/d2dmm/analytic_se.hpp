#pragma once

// Ergodic spectral efficiency of the cellular uplink and of a D2D link,
// evaluated from closed-form Laplace transforms of the signal and
// interference terms: E[ln(1+X/Y)] = integral over t of
// (1/t)(1-E[e^{-tX}]) E[e^{-tY}] for independent X, Y >= 0.

#include "d2dmm/params.hpp"

namespace d2dmm {

struct SpectralEfficiency {
  double value = 0.0;           // bps/Hz
  double error_estimate = 0.0;  // absolute bound from the outer quadrature
};

// integral_d^inf  [c r^-alpha / (1 + c r^-alpha)] r dr  for c, d >= 0,
// alpha > 2, in closed form via the regularized incomplete beta.  This is
// the per-interferer mass of a PPP thinned by an exclusion ball of radius
// d around the receiver.
double exclusion_ball_integral(double c, double d, double alpha);

// 1 - E[e^{-t h Z1}]: signal-side transform for the cellular uplink with
// beamforming gain h folded in at its mean N-S+1, averaged over the
// serving distance and the power-control mixture, including the
// exclusion-ball thinning of same-tier interferers.  In [0,1],
// nondecreasing in t, xi1(0) = 0.
double xi1(const SystemParams& p, double t);

// E[e^{-t I_D}]: transform of the D2D-tier interference at the base
// station; exp(-c t^{2/alpha_m}) with c from the fractional moment
// E[P_D^{2/alpha_m}].
double xi2(const SystemParams& p, double t);

// E[e^{-t Z2}]: transform of the received D2D signal power over the
// transmit-power mixture at fixed link distance d_o.
double xi3(const SystemParams& p, double t);

// (1 - xi3(t))/t evaluated without cancellation; tends to E[Z2] as
// t -> 0.  This is the form the rate integrand actually uses.
double one_minus_xi3_over_t(const SystemParams& p, double t);

// E[e^{-t (J_M + J_D)}]: transform of the total interference at a D2D
// receiver from both tiers; exp(-c t^{2/alpha_d}).
double xi4(const SystemParams& p, double t);

// Ergodic SE of a typical cellular user under the power-control law.
SpectralEfficiency cue_se(const SystemParams& p);

// Ergodic SE of a typical D2D link at distance d_o.
SpectralEfficiency d2d_se(const SystemParams& p);

// Area spectral efficiencies: per-m^2 sums over the active transmitters
// of each tier (S lambda_m cellular uplinks, lambda_d D2D links).
double area_se_cellular(const SystemParams& p);
double area_se_d2d(const SystemParams& p);

}  // namespace d2dmm
