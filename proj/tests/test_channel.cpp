#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wanet/channel.hpp"
#include "wanet/errors.hpp"
#include "wanet/topology.hpp"

using namespace wanet;

TEST_CASE("received_power_dbm") {
  ChannelParams p;
  p.alpha = 2.0;
  CHECK(received_power_dbm(p, 0.1, 0.0, 1.0) == doctest::Approx(20.0));
  for (double a : {2.0, 3.0, 4.5}) {
    p.alpha = a;
    CHECK(received_power_dbm(p, 1.0, 0.0, 1.0) == doctest::Approx(0.0));
  }
  p.fading_enabled = true;
  CHECK(received_power_dbm(p, 0.5, 0.0, 1.0) == doctest::Approx(received_power_dbm(p, 0.5, 0.0, 1.0)));
  CHECK(received_power_dbm(p, 1.0, 0.0, 10.0) == doctest::Approx(10.0));
  p.fading_mode = FadingMode::kLiteral;
  CHECK(received_power_dbm(p, 1.0, 0.0, 10.0) == doctest::Approx(10.0));
  CHECK(received_power_dbm(p, 1.0, 0.0, 1.0) == doctest::Approx(1.0));
  p.fading_mode = FadingMode::kDecibel;
  CHECK(received_power_dbm(p, 1.0, -3.0, 1.0) == doctest::Approx(-3.0));
  // Below rho0 the distance is clamped.
  p.rho0 = 0.01;
  CHECK(received_power_dbm(p, 0.0001, 0.0, 1.0) == doctest::Approx(received_power_dbm(p, 0.01, 0.0, 1.0)));
}

TEST_CASE("sample_link: deterministic threshold without randomness") {
  ChannelParams p;
  p.alpha = 2.0;
  p.min_rx_power_dbm = -80.0;
  CHECK(threshold_distance(p) == doctest::Approx(1e4));
  CHECK(sample_link({0, 0}, {1, 1}, p, SeedSpec{1, 1}));

  p.alpha = 4.0;
  p.min_rx_power_dbm = 20.0;
  CHECK(threshold_distance(p) == doctest::Approx(std::pow(10.0, -0.5)));
  const Deployment d = place_nodes(400, {3, 0});
  Engine e(9);
  for (std::size_t i = 0; i + 1 < d.size(); i += 2) {
    const double dist = distance(d.positions[i], d.positions[i + 1]);
    if (std::abs(dist - threshold_distance(p)) < 1e-9) continue;
    CHECK(sample_link(d.positions[i], d.positions[i + 1], p, e) == (dist < threshold_distance(p)));
  }
  CHECK(tx_power_for_radius(p, 0.2) - p.min_rx_power_dbm == doctest::Approx(40.0 * std::log10(0.2)));
}

TEST_CASE("sample_link: huge sigma gives a coin flip") {
  ChannelParams p;
  p.alpha = 3.0;
  p.sigma_db = 1e6;
  Engine e(4);
  int yes = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) yes += sample_link({0.1, 0.1}, {0.7, 0.6}, p, e);
  CHECK(std::abs(yes / double(trials) - 0.5) < 4.0 * 0.5 / std::sqrt(double(trials)));
}

TEST_CASE("sample_link: link probability symmetric in direction") {
  ChannelParams p;
  p.alpha = 3.0;
  p.sigma_db = 6.0;
  p.fading_enabled = true;
  p.min_rx_power_dbm = 20.0;
  Engine e1(1), e2(2);
  int ab = 0, ba = 0;
  const int trials = 20000;
  const Point a{0.2, 0.3}, b{0.35, 0.4};
  for (int i = 0; i < trials; ++i) {
    ab += sample_link(a, b, p, e1);
    ba += sample_link(b, a, p, e2);
  }
  const double pa = ab / double(trials), pb = ba / double(trials);
  CHECK(std::abs(pa - pb) < 4.0 * std::sqrt(2.0 * 0.25 / trials));
}

TEST_CASE("pair samples: slot layout and reproducibility") {
  CHECK(pair_slot(5, 0, 1) == 0);
  CHECK(pair_slot(5, 0, 4) == 3);
  CHECK(pair_slot(5, 1, 2) == 4);
  CHECK(pair_slot(5, 3, 4) == 9);
  ChannelParams p;
  p.sigma_db = 4.0;
  p.fading_enabled = true;
  const auto a = draw_pair_samples(50, p, {2, 2});
  const auto b = draw_pair_samples(50, p, {2, 2});
  REQUIRE(a.size() == 50 * 49 / 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].shadow_db == b[i].shadow_db);
    CHECK(a[i].fading_gain == b[i].fading_gain);
    CHECK(a[i].fading_gain > 0.0);
  }
}

TEST_CASE("sinr") {
  ChannelParams p;
  p.alpha = 4.0;
  p.noise = 1.0;
  const std::vector<LinkPair> one{{{0, 0}, {0, 1}}};
  const std::vector<double> unit{1.0};
  CHECK(sinr(one, 0, unit, p) == doctest::Approx(1.0));

  const std::vector<LinkPair> half{{{0, 0}, {0, 0.5}}};
  const std::vector<double> sixteen{16.0};
  CHECK(sinr(half, 0, sixteen, p) == doctest::Approx(256.0));

  p.noise = 0.0;
  const std::vector<LinkPair> two{{{0, 0}, {0, 0.1}}, {{1, 1}, {1, 0.9}}};
  const std::vector<double> ones{1.0, 1.0};
  CHECK(sinr(two, 0, ones, p) == doctest::Approx(sinr(two, 1, ones, p)));

  const std::vector<LinkPair> three{{{0, 0}, {0, 0.1}}, {{1, 1}, {1, 0.9}}, {{0.5, 0.2}, {0.4, 0.3}}};
  const std::vector<double> pw{1.0, 2.0, 0.5};
  const std::vector<double> pw7{7.0, 14.0, 3.5};
  for (std::size_t i = 0; i < 3; ++i) CHECK(sinr(three, i, pw, p) == doctest::Approx(sinr(three, i, pw7, p)));

  CHECK_THROWS_AS(sinr(std::span<const LinkPair>{}, 0, std::span<const double>{}, p), InvalidParameter);
  p.alpha = 2.0;
  CHECK_THROWS_AS(sinr(one, 0, unit, p), InvalidParameter);
}

TEST_CASE("delta_of_beta") {
  CHECK(std::abs(delta_of_beta(1.0, 4.0) - std::pow(96.0, 0.25)) < 1e-12);
  CHECK(delta_of_beta(1.0, 6.0) == doctest::Approx(std::pow(192.0, 1.0 / 6.0)));
  CHECK(delta_of_beta(1.0, 6.0) < delta_of_beta(1.0, 4.0));
  CHECK(delta_of_beta(1e-12, 4.0) < 1e-2);
  double prev_b = 0.0;
  for (double b = 0.1; b < 10.0; b *= 1.5) {
    const double v = delta_of_beta(b, 3.0);
    CHECK(v > prev_b);
    prev_b = v;
  }
  double prev_a = INFINITY;
  for (double a = 2.1; a <= 8.0; a += 0.1) {
    const double v = delta_of_beta(1.0, a);
    CHECK(v < prev_a);
    prev_a = v;
  }
  CHECK_THROWS_AS(delta_of_beta(1.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(delta_of_beta(0.0, 3.0), InvalidParameter);
}

TEST_CASE("channel connectivity: limits") {
  ChannelParams p;
  p.alpha = 2.0;
  p.min_rx_power_dbm = -80.0;
  CHECK(channel_connectivity_probability(100, 0.2, p, 20, 1) == 1.0);
  p.tx_power_dbm = -400.0;
  CHECK(channel_connectivity_probability(100, 0.2, p, 20, 1) == 0.0);
}

TEST_CASE("channel thresholds agree with direct link evaluation") {
  ChannelParams p;
  p.alpha = 3.0;
  p.sigma_db = 4.0;
  p.fading_enabled = true;
  const auto thr = channel_connectivity_thresholds(150, 0.2, p, 40, 8);
  for (double r : {0.08, 0.12, 0.16, 0.2, 0.3}) {
    ChannelParams at = p;
    at.tx_power_dbm = tx_power_for_radius(p, r);
    CHECK(channel_connectivity_probability(150, 0.2, at, 40, 8) == empirical_connectivity(thr, r));
  }
}

TEST_CASE("channel thresholds without randomness reduce to geometric ones") {
  ChannelParams p;
  p.alpha = 2.5;
  const auto chan = channel_connectivity_thresholds(200, 0.3, p, 10, 4);
  const auto geo = connectivity_thresholds(200, 0.3, 10, 4);
  for (std::size_t t = 0; t < 10; ++t) CHECK(chan[t] == doctest::Approx(geo[t]).epsilon(1e-12));
}

TEST_CASE("validate") {
  ChannelParams p;
  CHECK_NOTHROW(validate(p));
  p.sigma_db = -1.0;
  CHECK_THROWS_AS(validate(p), InvalidParameter);
  p = {};
  p.rho0 = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidParameter);
  p = {};
  p.beta = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidParameter);
}
