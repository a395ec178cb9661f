// Generates the bundled synthetic mega-constellation snapshot: six
// Walker-delta shells whose plane counts, altitudes and inclinations follow
// the publicly known Starlink layout, sized to 5662 element sets total.
// Output is standard 3-line TLE text with valid checksums, so the file is
// interchangeable with a live catalog download.
//
// Usage: gen_snapshot [output-path]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "leovec/constants.hpp"
#include "leovec/tle.hpp"

using namespace leovec;
using namespace leovec::constants;

namespace {

struct Shell {
  double alt_km;
  double incl_deg;
  int planes;
  int per_plane;
  int phasing;        // Walker F: inter-plane anomaly offset in units of 360/T
  double raan0_deg;   // decorrelates shells from one another
};

double mean_motion_rev_day(double alt_km) {
  double a = EARTH_RADIUS_KM + alt_km;
  double period_s = 2.0 * PI * std::sqrt(a * a * a / MU_EARTH_KM3_S2);
  return SECONDS_PER_DAY / period_s;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "data/starlink_synth.tle";

  // 1584 + 1584 + 720 + 348 + 172 + 1254 = 5662
  const std::vector<Shell> shells = {
      {550.0, 53.0, 72, 22, 17, 0.0},
      {540.0, 53.2, 72, 22, 17, 2.5},
      {570.0, 70.0, 36, 20, 11, 5.0},
      {560.0, 97.6, 6, 58, 1, 7.5},
      {560.0, 97.6, 4, 43, 1, 10.0},
      {530.0, 43.0, 22, 57, 9, 12.5},
  };

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 3;
  }

  int catalog = 50001;
  int total = 0;
  for (const Shell& shell : shells) {
    int t_total = shell.planes * shell.per_plane;
    double n_rev_day = mean_motion_rev_day(shell.alt_km);
    for (int p = 0; p < shell.planes; ++p) {
      double raan = shell.raan0_deg + 360.0 * p / shell.planes;
      for (int k = 0; k < shell.per_plane; ++k) {
        double anomaly = 360.0 * k / shell.per_plane +
                         360.0 * shell.phasing * p / t_total;

        TleRecord rec;
        rec.name = "STARLINK-" + std::to_string(catalog);
        rec.catalog_id = catalog;
        rec.intl_designator = "24001A";
        rec.epoch_year = 2024;
        rec.epoch_day = 1.5;  // 2024-01-01 12:00 UTC
        rec.element_set_no = 999;
        rec.inclination_deg = shell.incl_deg;
        rec.raan_deg = std::fmod(raan, 360.0);
        rec.eccentricity = 0.0001;
        rec.arg_perigee_deg = 0.0;
        rec.mean_anomaly_deg = std::fmod(anomaly, 360.0);
        rec.mean_motion_rev_day = n_rev_day;
        rec.rev_number = 1;

        auto lines = format_tle(rec);
        out << rec.name << "\n" << lines[0] << "\n" << lines[1] << "\n";
        ++catalog;
        ++total;
      }
    }
  }
  out.close();

  // Self-check: the file must parse back cleanly.
  std::ifstream in(out_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    auto records = parse_tle_file(text);
    if (static_cast<int>(records.size()) != total) {
      std::cerr << "round-trip lost records: wrote " << total << ", parsed "
                << records.size() << "\n";
      return 1;
    }
  } catch (const TleError& e) {
    std::cerr << "generated file does not parse: " << e.what() << "\n";
    return 1;
  }
  std::cout << out_path << ": " << total << " element sets\n";
  return 0;
}
