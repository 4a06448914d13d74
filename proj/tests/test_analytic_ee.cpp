#include "d2dmm/analytic_ee.hpp"

#include <limits>
#include <stdexcept>

#include "d2dmm/analytic_se.hpp"
#include "d2dmm/params.hpp"
#include "d2dmm/power_control.hpp"
#include "doctest.h"

using namespace d2dmm;

TEST_CASE("total power is circuit power plus scaled radiated power") {
  SystemParams p = default_params();

  // Defaults: 0.1 W circuit power, 50% amplifier efficiency.
  CHECK(cue_total_power(p) ==
        doctest::Approx(0.1 + 2.0 * avg_cue_power(p)).epsilon(1e-14));
  CHECK(d2d_total_power(p) ==
        doctest::Approx(0.1 + 2.0 * mean_d2d_power(p)).epsilon(1e-14));

  // A transmitter that radiates nothing still burns the circuit power.
  SystemParams quiet = p;
  quiet.p_max_c = 1e-30;
  CHECK(cue_total_power(quiet) == doctest::Approx(quiet.p_f).epsilon(1e-12));
  quiet = p;
  quiet.i_th = 0.0;
  CHECK(d2d_total_power(quiet) == doctest::Approx(quiet.p_f).epsilon(1e-12));

  SystemParams bad = p;
  bad.zeta = 0.0;
  CHECK_THROWS_AS(cue_total_power(bad), std::invalid_argument);
  CHECK_THROWS_AS(d2d_total_power(bad), std::invalid_argument);
}

TEST_CASE("energy efficiency is the rate-to-power ratio") {
  SystemParams p = default_params();

  const double rate_c = cue_se(p).value;
  const double rate_d = d2d_se(p).value;
  CHECK(cue_ee(p) == doctest::Approx(rate_c / cue_total_power(p)).epsilon(1e-12));
  CHECK(d2d_ee(p) == doctest::Approx(rate_d / d2d_total_power(p)).epsilon(1e-12));
  CHECK(cue_ee(p) > 0.0);
  CHECK(d2d_ee(p) > 0.0);

  // Raising the circuit power leaves the rate untouched, so the efficiency
  // drops by exactly the power ratio.
  SystemParams heavy = p;
  heavy.p_f = 0.3;
  const double scale = d2d_total_power(p) / d2d_total_power(heavy);
  CHECK(scale < 1.0);
  CHECK(d2d_ee(heavy) == doctest::Approx(d2d_ee(p) * scale).epsilon(1e-12));
}

TEST_CASE("d2d efficiency ignores the antenna count and dies with the cap") {
  SystemParams p = default_params();
  SystemParams wide = p;
  wide.n_antennas = 2 * p.n_antennas;
  CHECK(d2d_ee(wide) == d2d_ee(p));

  SystemParams silenced = p;
  silenced.i_th = 0.0;
  CHECK(d2d_ee(silenced) == 0.0);
}

TEST_CASE("cellular efficiency tracks antennas up and load down") {
  SystemParams p = default_params();

  SystemParams few = p, many = p;
  few.n_antennas = 200;
  many.n_antennas = 800;
  CHECK(cue_ee(few) < cue_ee(many));

  // Power draw does not depend on the user count, so the rate loss from
  // extra in-cell interferers shows up directly in the efficiency.
  double prev = std::numeric_limits<double>::infinity();
  for (int s : {10, 20, 40}) {
    SystemParams q = p;
    q.s_users = s;
    const double ee = cue_ee(q);
    CHECK(ee < prev);
    prev = ee;
  }
}
