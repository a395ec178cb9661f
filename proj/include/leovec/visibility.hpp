#pragma once

#include <vector>

#include "leovec/link.hpp"
#include "leovec/orbit.hpp"

namespace leovec {

// Propagated snapshot of one satellite at a common instant.
struct SatSnapshot {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_km = 0.0;
  double ux = 0.0, uy = 0.0, uz = 0.0;  // unit vector of the sub-point
  double horizon_cos = 1.0;
};

// A ground position with its precomputed unit vector.
struct GroundSite {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double ux = 0.0, uy = 0.0, uz = 0.0;
};

GroundSite make_site(double lat_deg, double lon_deg);

struct VisibleSat {
  int sat_index = -1;  // index into the roster, not the catalog id
  double snr_db = 0.0;
  double elevation_deg = 0.0;
  double slant_km = 0.0;
};

// Propagates the whole roster to jd_utc. threads == 0 lets OpenMP pick;
// output order is the roster order so any thread count gives identical
// results.
void propagate_all(const std::vector<KeplerElements>& roster, double jd_utc,
                   std::vector<SatSnapshot>& out, int threads);

// For every site, lists the satellites at or above min_elevation_deg with
// their uplink SNR, ordered by roster index. A cheap dot-product bound
// (the dot IS the central-angle cosine, within a few ulp) rejects ~96% of
// pairs; survivors are re-evaluated with the exact scalar routines, so the
// result is bitwise identical to scan_visibility_reference at any thread
// count.
void scan_visibility(const std::vector<SatSnapshot>& sats,
                     const std::vector<GroundSite>& sites,
                     const LinkEndpointParams& gv_tx,
                     const LinkEndpointParams& sat_rx,
                     const ChannelParams& channel, double min_elevation_deg,
                     std::vector<std::vector<VisibleSat>>& out, int threads);

// Plain all-pairs serial implementation, kept as the test oracle and the
// benchmark baseline.
void scan_visibility_reference(const std::vector<SatSnapshot>& sats,
                               const std::vector<GroundSite>& sites,
                               const LinkEndpointParams& gv_tx,
                               const LinkEndpointParams& sat_rx,
                               const ChannelParams& channel,
                               double min_elevation_deg,
                               std::vector<std::vector<VisibleSat>>& out);

}  // namespace leovec
