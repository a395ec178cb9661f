#pragma once

#include <string>

#include "leovec/errors.hpp"
#include "leovec/tle.hpp"

namespace leovec {

struct OrbitError : Error {
  using Error::Error;
};
struct EpochTooFarError : OrbitError {
  using OrbitError::OrbitError;
};
struct KeplerConvergenceError : OrbitError {
  using OrbitError::OrbitError;
};
struct BelowHorizonError : OrbitError {
  using OrbitError::OrbitError;
};

// ============================ time utilities ============================

// Julian date from a civil UTC date; `day` may carry a fraction.
double jd_from_ymd(int year, int month, double day);

// Julian date of a TLE epoch (fractional day-of-year, 1.0 = Jan 1 00:00 UTC).
double jd_from_year_doy(int year, double day_of_year);
double epoch_jd(const TleRecord& rec);

// Accepts "YYYY-MM-DD" or "YYYY-MM-DDThh:mm:ssZ".
double jd_from_iso8601(const std::string& text);

// Greenwich mean sidereal time in radians, IAU-82 polynomial.
double gmst_rad(double jd_ut1);

// =========================== two-body motion ============================

// Orbital elements reduced from a TLE, with derived quantities the
// propagator needs. Drag terms are intentionally dropped: over the +-7 day
// validity window enforced here a two-body model keeps LEO sub-point error
// well under the geometry tolerances this simulator cares about.
struct KeplerElements {
  int catalog_id = 0;
  double a_km = 0.0;
  double ecc = 0.0;
  double incl_rad = 0.0;
  double raan_rad = 0.0;
  double argp_rad = 0.0;
  double m0_rad = 0.0;
  double n_rad_s = 0.0;  // mean motion
  double epoch_jd = 0.0;
};

KeplerElements make_elements(const TleRecord& rec);

// Sub-satellite point on the spherical Earth plus altitude.
struct SatelliteState {
  double lat_deg = 0.0;
  double lon_deg = 0.0;  // in (-180, 180]
  double alt_km = 0.0;
};

// Solves E - e*sin(E) = M (radians). Newton from E0 = M with a bisection
// fallback; residual is driven below 1e-12.
double solve_kepler(double mean_anomaly_rad, double ecc);

// Throws EpochTooFarError outside +-7 days of the element epoch.
SatelliteState propagate(const KeplerElements& elems, double jd_utc);

// ======================== ground-to-satellite geometry ==================

// cos of the central angle between two sub-points (all degrees).
double central_angle_cos(double lat1_deg, double lon1_deg, double lat2_deg,
                         double lon2_deg);

// Horizon gate: the satellite is above the local horizon iff
// cos(alpha) > EARTH_RADIUS / (EARTH_RADIUS + alt).
double horizon_cos(double alt_km);

// Slant range from altitude and central angle.
double slant_range_km(double alt_km, double cos_alpha);

// Elevation angle in degrees; requires the satellite above the horizon.
double elevation_deg(double alt_km, double cos_alpha, double slant_km);

// One-way free-space propagation delay in seconds.
double propagation_delay_s(double slant_km);

}  // namespace leovec
