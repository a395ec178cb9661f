#include "leovec/link.hpp"

#include <algorithm>
#include <cmath>

namespace leovec {

LossModel::LossModel(std::vector<std::pair<double, double>> table)
    : table_(std::move(table)) {
  if (table_.empty())
    throw LinkError("loss table must hold at least one (elevation, dB) point");
  std::sort(table_.begin(), table_.end());
  for (size_t i = 1; i < table_.size(); ++i)
    if (table_[i].first == table_[i - 1].first)
      throw LinkError("loss table has duplicate elevation " +
                      std::to_string(table_[i].first));
}

double LossModel::at(double elevation_deg) const {
  if (table_.empty()) return constant_;
  if (elevation_deg <= table_.front().first) return table_.front().second;
  if (elevation_deg >= table_.back().first) return table_.back().second;
  auto hi = std::lower_bound(
      table_.begin(), table_.end(), elevation_deg,
      [](const std::pair<double, double>& p, double x) { return p.first < x; });
  auto lo = hi - 1;
  double t = (elevation_deg - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double fspl_db(double carrier_ghz, double distance_km) {
  return 92.45 + 20.0 * std::log10(carrier_ghz) + 20.0 * std::log10(distance_km);
}

double path_loss_db(const ChannelParams& ch, double distance_km,
                    double elevation_deg) {
  return fspl_db(ch.carrier_ghz, distance_km) + ch.scint_loss.at(elevation_deg) +
         ch.gas_loss.at(elevation_deg);
}

double snr_db(const LinkEndpointParams& tx, const LinkEndpointParams& rx,
              const ChannelParams& ch, double path_loss_db) {
  if (tx.role == rx.role)
    throw LinkError("link endpoints must pair a vehicle with a satellite");
  return tx.eirp_dbw + rx.g_over_t_dbk - path_loss_db - ch.boltzmann_dbw -
         10.0 * std::log10(ch.bandwidth_hz);
}

double capacity_bps(double bandwidth_hz, double snr_db) {
  return bandwidth_hz * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

double tx_delay_s(double n_bits, double rate_bps) {
  if (rate_bps <= 0.0)
    throw LinkError("transmission rate must be positive, got " +
                    std::to_string(rate_bps));
  return n_bits / rate_bps;
}

LinkState evaluate_link(const LinkEndpointParams& tx,
                        const LinkEndpointParams& rx, const ChannelParams& ch,
                        double distance_km, double elevation_deg) {
  LinkState s;
  s.fspl_db = fspl_db(ch.carrier_ghz, distance_km);
  s.path_loss_db = s.fspl_db + ch.scint_loss.at(elevation_deg) +
                   ch.gas_loss.at(elevation_deg);
  s.snr_db = snr_db(tx, rx, ch, s.path_loss_db);
  s.rate_bps = capacity_bps(ch.bandwidth_hz, s.snr_db);
  return s;
}

}  // namespace leovec
