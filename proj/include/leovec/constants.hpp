#pragma once

namespace leovec {
namespace constants {

// Spherical Earth model shared by the orbit and geometry code.
constexpr double EARTH_RADIUS_KM = 6371.0;
constexpr double MU_EARTH_KM3_S2 = 398600.4418;    // gravitational parameter
constexpr double SPEED_OF_LIGHT_KM_S = 299792.458;
constexpr double BOLTZMANN_DBW_PER_K_HZ = -228.6;  // 10*log10(k_B)

constexpr double PI = 3.14159265358979323846;
constexpr double DEG_TO_RAD = PI / 180.0;
constexpr double RAD_TO_DEG = 180.0 / PI;

constexpr double SECONDS_PER_DAY = 86400.0;
constexpr double JD_J2000 = 2451545.0;

}  // namespace constants
}  // namespace leovec
