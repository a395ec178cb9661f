#include "leovec/orbit.hpp"

#include <cmath>
#include <cstdio>

#include "leovec/constants.hpp"

namespace leovec {

using namespace constants;

// ============================ time utilities ============================

double jd_from_ymd(int year, int month, double day) {
  int d = static_cast<int>(day);
  double frac = day - d;
  // Fliegel & Van Flandern day-number algorithm (valid for Gregorian dates).
  int a = (14 - month) / 12;
  int y = year + 4800 - a;
  int m = month + 12 * a - 3;
  long jdn = d + (153 * m + 2) / 5 + 365L * y + y / 4 - y / 100 + y / 400 -
             32045;
  return jdn - 0.5 + frac;
}

double jd_from_year_doy(int year, double day_of_year) {
  return jd_from_ymd(year, 1, 1.0) + (day_of_year - 1.0);
}

double epoch_jd(const TleRecord& rec) {
  return jd_from_year_doy(rec.epoch_year, rec.epoch_day);
}

double jd_from_iso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int n = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi,
                      &s);
  if (n != 3 && n != 6)
    throw OrbitError("cannot parse UTC timestamp '" + text +
                     "' (want YYYY-MM-DD or YYYY-MM-DDThh:mm:ssZ)");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    throw OrbitError("timestamp '" + text + "' out of range");
  return jd_from_ymd(y, mo, d + (h * 3600.0 + mi * 60.0 + s) / 86400.0);
}

double gmst_rad(double jd_ut1) {
  double tut1 = (jd_ut1 - JD_J2000) / 36525.0;
  double sec = 67310.54841 +
               (876600.0 * 3600.0 + 8640184.812866) * tut1 +
               0.093104 * tut1 * tut1 - 6.2e-6 * tut1 * tut1 * tut1;
  double theta = std::fmod(sec * DEG_TO_RAD / 240.0, 2.0 * PI);
  if (theta < 0.0) theta += 2.0 * PI;
  return theta;
}

// =========================== two-body motion ============================

KeplerElements make_elements(const TleRecord& rec) {
  if (rec.eccentricity >= 1.0)
    throw OrbitError("non-elliptical eccentricity " +
                     std::to_string(rec.eccentricity) + " for catalog " +
                     std::to_string(rec.catalog_id));
  KeplerElements e;
  e.catalog_id = rec.catalog_id;
  e.ecc = rec.eccentricity;
  e.incl_rad = rec.inclination_deg * DEG_TO_RAD;
  e.raan_rad = rec.raan_deg * DEG_TO_RAD;
  e.argp_rad = rec.arg_perigee_deg * DEG_TO_RAD;
  e.m0_rad = rec.mean_anomaly_deg * DEG_TO_RAD;
  e.n_rad_s = rec.mean_motion_rev_day * 2.0 * PI / SECONDS_PER_DAY;
  e.a_km = std::cbrt(MU_EARTH_KM3_S2 / (e.n_rad_s * e.n_rad_s));
  e.epoch_jd = epoch_jd(rec);
  return e;
}

double solve_kepler(double mean_anomaly_rad, double ecc) {
  double m = std::fmod(mean_anomaly_rad, 2.0 * PI);
  if (m < 0.0) m += 2.0 * PI;

  double e_anom = m;
  for (int i = 0; i < 50; ++i) {
    double f = e_anom - ecc * std::sin(e_anom) - m;
    if (std::fabs(f) < 1e-13) return e_anom;
    e_anom -= f / (1.0 - ecc * std::cos(e_anom));
  }
  // Newton stalled (can happen near e -> 1); the root is bracketed by
  // [m - e, m + e], so fall back to bisection.
  double lo = m - ecc, hi = m + ecc;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double f = mid - ecc * std::sin(mid) - m;
    if (std::fabs(f) < 1e-13) return mid;
    double flo = lo - ecc * std::sin(lo) - m;
    if ((flo <= 0.0) == (f <= 0.0)) lo = mid;
    else hi = mid;
  }
  double mid = 0.5 * (lo + hi);
  if (std::fabs(mid - ecc * std::sin(mid) - m) < 1e-10) return mid;
  throw KeplerConvergenceError("Kepler solve failed for M=" +
                               std::to_string(m) + " e=" +
                               std::to_string(ecc));
}

SatelliteState propagate(const KeplerElements& el, double jd_utc) {
  double dt_days = jd_utc - el.epoch_jd;
  if (std::fabs(dt_days) > 7.0)
    throw EpochTooFarError("propagation " + std::to_string(dt_days) +
                           " days from epoch of catalog " +
                           std::to_string(el.catalog_id) +
                           " (two-body validity guard is +-7 days)");

  double m = el.m0_rad + el.n_rad_s * dt_days * SECONDS_PER_DAY;
  double e_anom = solve_kepler(m, el.ecc);
  double nu = 2.0 * std::atan2(std::sqrt(1.0 + el.ecc) * std::sin(0.5 * e_anom),
                               std::sqrt(1.0 - el.ecc) * std::cos(0.5 * e_anom));
  double r = el.a_km * (1.0 - el.ecc * std::cos(e_anom));
  double u = el.argp_rad + nu;  // argument of latitude

  double cos_u = std::cos(u), sin_u = std::sin(u);
  double cos_o = std::cos(el.raan_rad), sin_o = std::sin(el.raan_rad);
  double cos_i = std::cos(el.incl_rad), sin_i = std::sin(el.incl_rad);
  double x = r * (cos_o * cos_u - sin_o * sin_u * cos_i);
  double y = r * (sin_o * cos_u + cos_o * sin_u * cos_i);
  double z = r * (sin_u * sin_i);

  double lon = std::atan2(y, x) - gmst_rad(jd_utc);
  lon = std::fmod(lon, 2.0 * PI);
  if (lon <= -PI) lon += 2.0 * PI;
  if (lon > PI) lon -= 2.0 * PI;

  SatelliteState s;
  s.lat_deg = std::asin(z / r) * RAD_TO_DEG;
  s.lon_deg = lon * RAD_TO_DEG;
  s.alt_km = r - EARTH_RADIUS_KM;
  return s;
}

// ======================== ground-to-satellite geometry ==================

double central_angle_cos(double lat1_deg, double lon1_deg, double lat2_deg,
                         double lon2_deg) {
  double y1 = lat1_deg * DEG_TO_RAD, y2 = lat2_deg * DEG_TO_RAD;
  double dx = (lon1_deg - lon2_deg) * DEG_TO_RAD;
  double c = std::cos(y1) * std::cos(y2) * std::cos(dx) +
             std::sin(y1) * std::sin(y2);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

double horizon_cos(double alt_km) {
  return EARTH_RADIUS_KM / (EARTH_RADIUS_KM + alt_km);
}

double slant_range_km(double alt_km, double cos_alpha) {
  // Law of cosines, kept in unnormalized form: at cos_alpha = 1 every term
  // is exactly representable for integer-km altitudes, so the zenith
  // identity d = alt holds bit-exactly.
  double rs = EARTH_RADIUS_KM + alt_km;
  return std::sqrt(EARTH_RADIUS_KM * EARTH_RADIUS_KM + rs * rs -
                   2.0 * EARTH_RADIUS_KM * rs * cos_alpha);
}

double elevation_deg(double alt_km, double cos_alpha, double slant_km) {
  if (cos_alpha <= horizon_cos(alt_km))
    throw BelowHorizonError("satellite below the local horizon (cos alpha " +
                            std::to_string(cos_alpha) + ", limit " +
                            std::to_string(horizon_cos(alt_km)) + ")");
  double sin_alpha = std::sqrt(std::max(0.0, 1.0 - cos_alpha * cos_alpha));
  double arg = (EARTH_RADIUS_KM + alt_km) * sin_alpha / slant_km;
  if (arg > 1.0) arg = 1.0;
  if (arg < -1.0) arg = -1.0;
  return std::acos(arg) * RAD_TO_DEG;
}

double propagation_delay_s(double slant_km) {
  return slant_km / SPEED_OF_LIGHT_KM_S;
}

}  // namespace leovec
