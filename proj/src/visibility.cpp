#include "leovec/visibility.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leovec/constants.hpp"

namespace leovec {

using namespace constants;

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Wide enough for the ulp-level gap between the dot product and the
// trig-evaluated central-angle cosine, and nothing more.
constexpr double PREFILTER_MARGIN = 1e-9;

void unit_vector(double lat_deg, double lon_deg, double& ux, double& uy,
                 double& uz) {
  double lat = lat_deg * DEG_TO_RAD, lon = lon_deg * DEG_TO_RAD;
  double cl = std::cos(lat);
  ux = cl * std::cos(lon);
  uy = cl * std::sin(lon);
  uz = std::sin(lat);
}

// Exact per-pair evaluation shared by the kernel and the reference.
bool evaluate_pair(const SatSnapshot& sat, const GroundSite& site,
                   const LinkEndpointParams& gv_tx,
                   const LinkEndpointParams& sat_rx,
                   const ChannelParams& channel, double min_elevation_deg,
                   VisibleSat& out) {
  double cos_alpha = central_angle_cos(site.lat_deg, site.lon_deg, sat.lat_deg,
                                       sat.lon_deg);
  if (cos_alpha <= sat.horizon_cos) return false;
  double slant = slant_range_km(sat.alt_km, cos_alpha);
  double elev = elevation_deg(sat.alt_km, cos_alpha, slant);
  if (elev < min_elevation_deg) return false;
  LinkState link = evaluate_link(gv_tx, sat_rx, channel, slant, elev);
  out.snr_db = link.snr_db;
  out.elevation_deg = elev;
  out.slant_km = slant;
  return true;
}

}  // namespace

GroundSite make_site(double lat_deg, double lon_deg) {
  GroundSite s;
  s.lat_deg = lat_deg;
  s.lon_deg = lon_deg;
  unit_vector(lat_deg, lon_deg, s.ux, s.uy, s.uz);
  return s;
}

void propagate_all(const std::vector<KeplerElements>& roster, double jd_utc,
                   std::vector<SatSnapshot>& out, int threads) {
  out.resize(roster.size());
  int n = static_cast<int>(roster.size());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (int i = 0; i < n; ++i) {
    SatelliteState st = propagate(roster[i], jd_utc);
    SatSnapshot& snap = out[i];
    snap.lat_deg = st.lat_deg;
    snap.lon_deg = st.lon_deg;
    snap.alt_km = st.alt_km;
    snap.horizon_cos = horizon_cos(st.alt_km);
    unit_vector(st.lat_deg, st.lon_deg, snap.ux, snap.uy, snap.uz);
  }
}

void scan_visibility(const std::vector<SatSnapshot>& sats,
                     const std::vector<GroundSite>& sites,
                     const LinkEndpointParams& gv_tx,
                     const LinkEndpointParams& sat_rx,
                     const ChannelParams& channel, double min_elevation_deg,
                     std::vector<std::vector<VisibleSat>>& out, int threads) {
  out.assign(sites.size(), {});
  int n_sites = static_cast<int>(sites.size());
  int n_sats = static_cast<int>(sats.size());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (int g = 0; g < n_sites; ++g) {
    const GroundSite& site = sites[g];
    std::vector<VisibleSat>& list = out[g];
    for (int i = 0; i < n_sats; ++i) {
      const SatSnapshot& sat = sats[i];
      double dot = site.ux * sat.ux + site.uy * sat.uy + site.uz * sat.uz;
      if (dot <= sat.horizon_cos - PREFILTER_MARGIN) continue;
      VisibleSat v;
      v.sat_index = i;
      if (evaluate_pair(sat, site, gv_tx, sat_rx, channel, min_elevation_deg, v))
        list.push_back(v);
    }
  }
}

void scan_visibility_reference(const std::vector<SatSnapshot>& sats,
                               const std::vector<GroundSite>& sites,
                               const LinkEndpointParams& gv_tx,
                               const LinkEndpointParams& sat_rx,
                               const ChannelParams& channel,
                               double min_elevation_deg,
                               std::vector<std::vector<VisibleSat>>& out) {
  out.assign(sites.size(), {});
  for (size_t g = 0; g < sites.size(); ++g) {
    for (size_t i = 0; i < sats.size(); ++i) {
      VisibleSat v;
      v.sat_index = static_cast<int>(i);
      if (evaluate_pair(sats[i], sites[g], gv_tx, sat_rx, channel,
                        min_elevation_deg, v))
        out[g].push_back(v);
    }
  }
}

}  // namespace leovec
