#pragma once

#include "d2dmm/params.hpp"

namespace d2dmm {

// Average power drawn by a cellular uplink transmitter: fixed circuit power
// plus the mean radiated power divided by the amplifier efficiency.  Watts.
double cue_total_power(const SystemParams& p);

// Same accounting for a D2D transmitter, using the mean of its
// interference-capped transmit power.  Watts.
double d2d_total_power(const SystemParams& p);

// Energy efficiency of a cellular link: mean spectral efficiency over total
// power draw, in bits/J/Hz.  Multiply by bandwidth for bits per joule.
double cue_ee(const SystemParams& p);

// Energy efficiency of a D2D link, bits/J/Hz.
double d2d_ee(const SystemParams& p);

}  // namespace d2dmm
