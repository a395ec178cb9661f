#pragma once

#include <utility>
#include <vector>

#include "leovec/errors.hpp"

namespace leovec {

struct LinkError : Error {
  using Error::Error;
};

enum class LinkRole { GroundVehicle, Satellite };

struct LinkEndpointParams {
  double eirp_dbw = 0.0;
  double g_over_t_dbk = 0.0;
  LinkRole role = LinkRole::GroundVehicle;
};

// Extra per-elevation loss (dB). Either a constant or a piecewise-linear
// table over elevation degrees; outside the table the edge value holds.
class LossModel {
 public:
  LossModel() = default;
  explicit LossModel(double constant_db) : constant_(constant_db) {}
  explicit LossModel(std::vector<std::pair<double, double>> table);

  double at(double elevation_deg) const;
  bool operator==(const LossModel&) const = default;
  bool is_table() const { return !table_.empty(); }
  const std::vector<std::pair<double, double>>& table() const { return table_; }
  double constant() const { return constant_; }

 private:
  double constant_ = 0.0;
  std::vector<std::pair<double, double>> table_;  // sorted by elevation
};

struct ChannelParams {
  bool operator==(const ChannelParams&) const = default;
  double carrier_ghz = 30.0;
  double bandwidth_hz = 1.0e7;
  double boltzmann_dbw = -228.6;  // 10*log10(k_B), dBW/(K*Hz)
  LossModel scint_loss;
  LossModel gas_loss;
};

struct LinkState {
  double fspl_db = 0.0;
  double path_loss_db = 0.0;
  double snr_db = 0.0;
  double rate_bps = 0.0;
};

// Free-space path loss, frequency in GHz and distance in km.
double fspl_db(double carrier_ghz, double distance_km);

// FSPL plus the configured scintillation and gas losses at this elevation.
double path_loss_db(const ChannelParams& ch, double distance_km,
                    double elevation_deg);

// Link SNR in dB between a transmitter and a receiver. The two endpoints
// must have different roles (one vehicle, one satellite).
double snr_db(const LinkEndpointParams& tx, const LinkEndpointParams& rx,
              const ChannelParams& ch, double path_loss_db);

// Shannon rate in bit/s for the given SNR.
double capacity_bps(double bandwidth_hz, double snr_db);

// Transmission delay of n_bits at rate_bps; the rate must be positive.
double tx_delay_s(double n_bits, double rate_bps);

// Convenience: full evaluation of one direction of a link.
LinkState evaluate_link(const LinkEndpointParams& tx,
                        const LinkEndpointParams& rx, const ChannelParams& ch,
                        double distance_km, double elevation_deg);

}  // namespace leovec
