#include "d2dmm/analytic_ee.hpp"

#include "d2dmm/analytic_se.hpp"
#include "d2dmm/power_control.hpp"

namespace d2dmm {

double cue_total_power(const SystemParams& p) {
  validate(p);
  return p.p_f + avg_cue_power(p) / p.zeta;
}

double d2d_total_power(const SystemParams& p) {
  validate(p);
  return p.p_f + mean_d2d_power(p) / p.zeta;
}

double cue_ee(const SystemParams& p) {
  return cue_se(p).value / cue_total_power(p);
}

double d2d_ee(const SystemParams& p) {
  return d2d_se(p).value / d2d_total_power(p);
}

}  // namespace d2dmm
