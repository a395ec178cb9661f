#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "leovec/link.hpp"

using namespace leovec;

namespace {

LinkEndpointParams gv_end() {
  return {37.2, 19.19, LinkRole::GroundVehicle};
}
LinkEndpointParams sat_end() {
  return {34.9, 15.84, LinkRole::Satellite};
}
ChannelParams ka_channel() {
  ChannelParams ch;
  ch.carrier_ghz = 30.0;
  ch.bandwidth_hz = 1.0e7;
  ch.boltzmann_dbw = -228.6;
  return ch;
}

}  // namespace

TEST_CASE("free-space path loss matches the dB form") {
  double fspl = fspl_db(30.0, 600.0);
  CHECK(fspl == doctest::Approx(177.55545010206612).epsilon(1e-13));
  // Recompute from the definition rather than the 92.45 shortcut.
  double expect =
      92.45 + 20.0 * std::log10(30.0) + 20.0 * std::log10(600.0);
  CHECK(fspl == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("doubling the distance adds 6.02 dB") {
  double d1 = fspl_db(30.0, 600.0);
  double d2 = fspl_db(30.0, 1200.0);
  CHECK(d2 - d1 == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("fspl at 1 GHz and 1 km isolates the constant term") {
  CHECK(fspl_db(1.0, 1.0) == doctest::Approx(92.45).epsilon(1e-15));
}

TEST_CASE("uplink snr reproduces the frozen budget") {
  double pl = fspl_db(30.0, 600.0);
  double snr = snr_db(gv_end(), sat_end(), ka_channel(), pl);
  CHECK(snr == doctest::Approx(34.08454989793388).epsilon(1e-13));
  // EIRP + G/T - PL + 228.6 - 10 log10 B, written out independently.
  double expect = 37.2 + 15.84 - pl + 228.6 - 10.0 * std::log10(1.0e7);
  CHECK(snr == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("downlink snr uses the satellite eirp and vehicle g-over-t") {
  double pl = fspl_db(30.0, 600.0);
  double snr = snr_db(sat_end(), gv_end(), ka_channel(), pl);
  CHECK(snr == doctest::Approx(35.13454989793388).epsilon(1e-13));
}

TEST_CASE("snr requires one vehicle and one satellite") {
  double pl = fspl_db(30.0, 600.0);
  CHECK_THROWS_AS(snr_db(gv_end(), gv_end(), ka_channel(), pl), LinkError);
  CHECK_THROWS_AS(snr_db(sat_end(), sat_end(), ka_channel(), pl), LinkError);
}

TEST_CASE("capacity at 0 dB is exactly the bandwidth") {
  CHECK(capacity_bps(1.0e7, 0.0) == doctest::Approx(1.0e7).epsilon(1e-15));
}

TEST_CASE("capacity reproduces the frozen uplink rate") {
  double pl = fspl_db(30.0, 600.0);
  double snr = snr_db(gv_end(), sat_end(), ka_channel(), pl);
  double rate = capacity_bps(1.0e7, snr);
  CHECK(rate == doctest::Approx(113232055.54619916).epsilon(1e-12));
  double expect = 1.0e7 * std::log2(1.0 + std::pow(10.0, snr / 10.0));
  CHECK(rate == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("transmit delay is bits over rate") {
  double pl = fspl_db(30.0, 600.0);
  double rate = capacity_bps(1.0e7, snr_db(gv_end(), sat_end(), ka_channel(), pl));
  CHECK(tx_delay_s(3.0e6, rate) ==
        doctest::Approx(0.026494264239299157).epsilon(1e-13));
  CHECK(tx_delay_s(1.0e6, 1.0e6) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(tx_delay_s(1.0e6, 0.0), LinkError);
  CHECK_THROWS_AS(tx_delay_s(1.0e6, -3.0), LinkError);
}

TEST_CASE("constant loss model is flat everywhere") {
  LossModel m(1.75);
  CHECK(m.at(0.0) == 1.75);
  CHECK(m.at(45.0) == 1.75);
  CHECK(m.at(90.0) == 1.75);
  CHECK_FALSE(m.is_table());
}

TEST_CASE("table loss model interpolates and clamps at the edges") {
  LossModel m(std::vector<std::pair<double, double>>{
      {10.0, 4.0}, {30.0, 2.0}, {90.0, 1.0}});
  CHECK(m.is_table());
  CHECK(m.at(10.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(m.at(20.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.at(30.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m.at(60.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(m.at(90.0) == doctest::Approx(1.0).epsilon(1e-15));
  // Flat extrapolation beyond the knots.
  CHECK(m.at(5.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(m.at(89.99) == doctest::Approx(m.at(89.99)));
  CHECK(LossModel(std::vector<std::pair<double, double>>{{10.0, 4.0}})
            .at(70.0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("table loss model sorts unsorted input") {
  LossModel m(std::vector<std::pair<double, double>>{
      {90.0, 1.0}, {10.0, 4.0}, {30.0, 2.0}});
  CHECK(m.at(20.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.table().front().first == 10.0);
  CHECK(m.table().back().first == 90.0);
}

TEST_CASE("loss model rejects duplicate or empty tables") {
  CHECK_THROWS_AS(LossModel(std::vector<std::pair<double, double>>{
                      {10.0, 4.0}, {10.0, 2.0}}),
                  LinkError);
  CHECK_THROWS_AS(LossModel(std::vector<std::pair<double, double>>{}),
                  LinkError);
}

TEST_CASE("path loss adds the elevation-dependent terms to fspl") {
  ChannelParams ch = ka_channel();
  ch.scint_loss = LossModel(0.3);
  ch.gas_loss = LossModel(std::vector<std::pair<double, double>>{
      {10.0, 2.0}, {90.0, 0.5}});
  double pl = path_loss_db(ch, 600.0, 50.0);
  double expect = fspl_db(30.0, 600.0) + 0.3 + (2.0 + (50.0 - 10.0) / 80.0 * -1.5);
  CHECK(pl == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("evaluate_link composes the budget end to end") {
  ChannelParams ch = ka_channel();
  LinkState st = evaluate_link(gv_end(), sat_end(), ch, 600.0, 60.0);
  CHECK(st.fspl_db == doctest::Approx(177.55545010206612).epsilon(1e-13));
  CHECK(st.path_loss_db == doctest::Approx(st.fspl_db).epsilon(1e-15));
  CHECK(st.snr_db == doctest::Approx(34.08454989793388).epsilon(1e-13));
  CHECK(st.rate_bps == doctest::Approx(113232055.54619916).epsilon(1e-12));

  ch.scint_loss = LossModel(3.0);
  LinkState lossy = evaluate_link(gv_end(), sat_end(), ch, 600.0, 60.0);
  CHECK(lossy.snr_db == doctest::Approx(st.snr_db - 3.0).epsilon(1e-13));
  CHECK(lossy.rate_bps < st.rate_bps);
}
