#pragma once

// Closed-form Jensen lower bounds on the two link rates and the maximum
// D2D transmitter densities that provably sustain a target rate.  Each
// bound factors into a geometric-mean signal term and arithmetic-mean
// interference terms, so the rate target inverts algebraically into a
// density threshold.

#include "d2dmm/params.hpp"

namespace d2dmm {

// Mean-interference factors of the cellular-side bound.  x2 bundles the
// in-cell uplink interference with the noise floor (W); x3 is the D2D
// contribution per unit transmitter density (W m^2).
struct CellularBoundFactors {
  double x2;
  double x3;
};

// Factors of the D2D-side bound.  x4 is the geometric-mean received
// signal power (W m^-alpha_d absorbed; unitless once divided by the
// interference terms); x5 and x6 are the per-density cellular and D2D
// interference coefficients at the D2D receiver (W m^2).
struct D2dBoundFactors {
  double x4;
  double x5;
  double x6;
};

// Geometric-mean received-signal factor of the cellular bound, with the
// beamforming gain left out as an explicit linear factor.  Requires
// eta > 0 so the power-cap radius is finite; throws std::domain_error
// otherwise.
double x1(const SystemParams& p);

// s_users == 0 is accepted here and below: the cellular tier then
// contributes no interference term.
CellularBoundFactors x2_x3(const SystemParams& p);

D2dBoundFactors x4_x5_x6(const SystemParams& p);

// Rate floors in bps/Hz implied by the factors above.
double lower_bound_cue_se(const SystemParams& p);
double lower_bound_d2d_se(const SystemParams& p);

// Largest D2D density (m^-2) for which the cellular rate floor still
// reaches r_th bps/Hz.  0 means the target is out of reach even without
// D2D; +inf means no density constraint binds.  The plain version keeps
// the integer beamforming gain of the printed bound; the exact variant
// uses the geometric-mean gain exp(digamma(N - S + 1)), which is the
// tighter (slightly smaller) threshold.
double max_d2d_density_cellular(const SystemParams& p, double r_th);
double max_d2d_density_cellular_exact(const SystemParams& p, double r_th);

// Same inversion for the D2D rate floor.
double max_d2d_density_d2d(const SystemParams& p, double r_th);

}  // namespace d2dmm
