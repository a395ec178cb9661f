#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "leovec/constants.hpp"
#include "leovec/orbit.hpp"
#include "leovec/tle.hpp"

using namespace leovec;
using namespace leovec::constants;

namespace {

// Slant range written out from scratch, pinning the production routine to
// the plain law of cosines.
double slant_law_of_cosines(double alt_km, double cos_alpha) {
  double r = EARTH_RADIUS_KM + alt_km;
  return std::sqrt(EARTH_RADIUS_KM * EARTH_RADIUS_KM + r * r -
                   2.0 * EARTH_RADIUS_KM * r * cos_alpha);
}

TleRecord circular_record(double incl_deg, double raan_deg, double m0_deg,
                          double alt_km) {
  TleRecord rec;
  rec.name = "TEST";
  rec.catalog_id = 99999;
  rec.intl_designator = "24001A";
  rec.epoch_year = 2024;
  rec.epoch_day = 1.5;
  rec.element_set_no = 1;
  rec.inclination_deg = incl_deg;
  rec.raan_deg = raan_deg;
  rec.eccentricity = 0.0;
  rec.arg_perigee_deg = 0.0;
  rec.mean_anomaly_deg = m0_deg;
  double a = EARTH_RADIUS_KM + alt_km;
  rec.mean_motion_rev_day =
      SECONDS_PER_DAY / (2.0 * PI * std::sqrt(a * a * a / MU_EARTH_KM3_S2));
  rec.rev_number = 1;
  return rec;
}

}  // namespace

TEST_CASE("julian dates hit the standard epochs") {
  CHECK(jd_from_ymd(2000, 1, 1.5) == 2451545.0);
  CHECK(jd_from_ymd(1970, 1, 1.0) == 2440587.5);
  CHECK(jd_from_year_doy(2024, 1.5) == jd_from_ymd(2024, 1, 1.5));
  CHECK(jd_from_year_doy(2024, 32.25) == jd_from_ymd(2024, 2, 1.25));
}

TEST_CASE("iso8601 timestamps parse to julian dates") {
  CHECK(jd_from_iso8601("2024-01-01T12:00:00Z") == doctest::Approx(2460311.0));
  CHECK(jd_from_iso8601("2024-01-01") == doctest::Approx(2460310.5));
  CHECK_THROWS_AS(jd_from_iso8601("not-a-date"), OrbitError);
}

TEST_CASE("gmst matches the published value at J2000") {
  // 280.46061837 deg at JD 2451545.0
  CHECK(gmst_rad(2451545.0) ==
        doctest::Approx(4.894961212823059).epsilon(1e-12));
  double g = gmst_rad(2460311.0);
  CHECK(g >= 0.0);
  CHECK(g < 2.0 * PI);
  CHECK(g == doctest::Approx(4.898187195826253).epsilon(1e-12));
}

TEST_CASE("kepler solver is exact for circular orbits") {
  for (double m : {0.0, 0.5, 2.0, 3.14, 6.0})
    CHECK(solve_kepler(m, 0.0) == doctest::Approx(m).epsilon(1e-15));
}

TEST_CASE("kepler solver reproduces the frozen oracle") {
  CHECK(solve_kepler(1.0, 0.1) ==
        doctest::Approx(1.0885977523978936).epsilon(1e-13));
}

TEST_CASE("kepler residual below 1e-12 across eccentricities") {
  for (double e : {0.0001, 0.01, 0.1, 0.5, 0.9, 0.99}) {
    for (int k = 0; k <= 40; ++k) {
      // The solver normalizes M into [0, 2pi), so compare against the wrap.
      double m = 2.0 * PI * k / 40.0 - PI;
      double mw = std::fmod(m, 2.0 * PI);
      if (mw < 0.0) mw += 2.0 * PI;
      double E = solve_kepler(m, e);
      CHECK(std::abs(E - e * std::sin(E) - mw) < 1e-12);
    }
  }
}

TEST_CASE("third law: mean motion maps back to the semi-major axis") {
  KeplerElements el = make_elements(circular_record(53.0, 0.0, 0.0, 550.0));
  CHECK(el.a_km == doctest::Approx(6921.0).epsilon(1e-9));
}

TEST_CASE("equatorial orbit stays at zero latitude and its altitude") {
  TleRecord rec = circular_record(0.0, 0.0, 0.0, 550.0);
  KeplerElements el = make_elements(rec);
  for (double dt : {0.0, 120.0, 600.0, 3000.0}) {
    SatelliteState st = propagate(el, el.epoch_jd + dt / SECONDS_PER_DAY);
    CHECK(std::abs(st.lat_deg) < 1e-9);
    CHECK(st.alt_km == doctest::Approx(550.0).epsilon(1e-9));
    CHECK(st.lon_deg > -180.0);
    CHECK(st.lon_deg <= 180.0);
  }
}

TEST_CASE("equatorial orbit at epoch sits at minus gmst longitude") {
  TleRecord rec = circular_record(0.0, 0.0, 0.0, 550.0);
  KeplerElements el = make_elements(rec);
  SatelliteState st = propagate(el, el.epoch_jd);
  double expect = -gmst_rad(el.epoch_jd) * RAD_TO_DEG;
  while (expect <= -180.0) expect += 360.0;
  CHECK(st.lon_deg == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("polar orbit passes over the pole a quarter period after epoch") {
  TleRecord rec = circular_record(90.0, 40.0, 0.0, 550.0);
  KeplerElements el = make_elements(rec);
  double period_s = 2.0 * PI / el.n_rad_s;
  SatelliteState st =
      propagate(el, el.epoch_jd + 0.25 * period_s / SECONDS_PER_DAY);
  CHECK(st.lat_deg == doctest::Approx(90.0).epsilon(1e-6));
}

TEST_CASE("propagation beyond the epoch guard throws") {
  KeplerElements el = make_elements(circular_record(53.0, 0.0, 0.0, 550.0));
  CHECK_THROWS_AS(propagate(el, el.epoch_jd + 7.5), EpochTooFarError);
  CHECK_THROWS_AS(propagate(el, el.epoch_jd - 7.5), EpochTooFarError);
  CHECK_NOTHROW(propagate(el, el.epoch_jd + 6.9));
}

TEST_CASE("central angle cosine basics") {
  CHECK(central_angle_cos(45.0, 11.0, 45.0, 11.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(central_angle_cos(10.0, 20.0, -10.0, -160.0) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(central_angle_cos(0.0, 0.0, 0.0, 90.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(central_angle_cos(0.0, 0.0, 90.0, 123.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("slant range equals the law-of-cosines form") {
  for (double alt : {350.0, 550.0, 600.0, 1000.0}) {
    for (double alpha_deg = 0.0; alpha_deg <= 20.0; alpha_deg += 0.5) {
      double c = std::cos(alpha_deg * DEG_TO_RAD);
      CHECK(slant_range_km(alt, c) ==
            doctest::Approx(slant_law_of_cosines(alt, c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zenith slant equals the altitude") {
  CHECK(slant_range_km(550.0, 1.0) == doctest::Approx(550.0).epsilon(1e-12));
  CHECK(slant_range_km(600.0, 1.0) == doctest::Approx(600.0).epsilon(1e-12));
}

TEST_CASE("zenith elevation is 90 degrees") {
  double d = slant_range_km(600.0, 1.0);
  CHECK(elevation_deg(600.0, 1.0, d) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("elevation drops to zero at the horizon") {
  double hc = horizon_cos(550.0);
  double c = hc + 1e-9;
  double d = slant_range_km(550.0, c);
  CHECK(elevation_deg(550.0, c, d) < 0.1);
  CHECK(elevation_deg(550.0, c, d) >= 0.0);
}

TEST_CASE("below the horizon the elevation is rejected") {
  double hc = horizon_cos(550.0);
  double c = hc - 1e-6;
  double d = slant_range_km(550.0, c);
  CHECK_THROWS_AS(elevation_deg(550.0, c, d), BelowHorizonError);
}

TEST_CASE("horizon cosine is R/(R+h)") {
  CHECK(horizon_cos(550.0) ==
        doctest::Approx(EARTH_RADIUS_KM / (EARTH_RADIUS_KM + 550.0))
            .epsilon(1e-15));
}

TEST_CASE("propagation delay is distance over c") {
  CHECK(propagation_delay_s(299792.458) == 1.0);
  CHECK(propagation_delay_s(550.0) ==
        doctest::Approx(0.0018346025235898363).epsilon(1e-15));
}

TEST_CASE("snapshot epoch lands on 2024-01-01T12Z") {
  Constellation con = load_constellation(testutil::snapshot_path(), 1, 1);
  REQUIRE(con.records.size() == 1);
  CHECK(epoch_jd(con.records[0]) == 2460311.0);
}
