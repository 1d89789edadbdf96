#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wanet/deployment.hpp"
#include "wanet/geometry.hpp"
#include "wanet/rng.hpp"

namespace wanet {

/// How a Rayleigh power gain G enters the dB-domain received power.
enum class FadingMode {
  kDecibel,  // adds 10 log10(G) dB
  kLiteral,  // adds G itself, as the printed formula reads
};

/// Link-budget and SINR parameters. Distances are in unit-square units;
/// powers in dBm except `noise`, which is linear.
struct ChannelParams {
  double tx_power_dbm = 0.0;
  double min_rx_power_dbm = -80.0;
  double alpha = 2.0;
  double sigma_db = 0.0;
  bool fading_enabled = false;
  FadingMode fading_mode = FadingMode::kDecibel;
  double rho0 = 1e-9;
  double noise = 0.0;
  double beta = 1.0;
};

/// Throws InvalidParameter on sigma < 0, rho0 <= 0, beta <= 0 or alpha <= 0.
void validate(const ChannelParams& p);

/// P_t - 10 alpha log10(max(dist, rho0)) + shadow + fading term.
double received_power_dbm(const ChannelParams& p, double dist, double shadow_db, double fading_gain);

/// Distance below which a link closes when shadowing and fading are absent:
/// 10^((P_t - P_min) / (10 alpha)).
double threshold_distance(const ChannelParams& p);

/// Transmit power that puts the deterministic threshold distance at `radius`.
double tx_power_for_radius(const ChannelParams& p, double radius);

/// One shadowing/fading draw for a link.
struct LinkSample {
  double shadow_db = 0.0;
  double fading_gain = 1.0;
};

LinkSample draw_link_sample(const ChannelParams& p, Engine& engine);

/// True iff the received power with a fresh draw exceeds P_min.
bool sample_link(Point a, Point b, const ChannelParams& p, Engine& engine);
bool sample_link(Point a, Point b, const ChannelParams& p, SeedSpec seed);

/// Draws for every unordered pair (i < j) in row-major upper-triangle order,
/// one trial's worth. The same draw serves both directions.
std::vector<LinkSample> draw_pair_samples(std::size_t n, const ChannelParams& p, SeedSpec seed);

/// Index of pair (i, j), i < j, inside draw_pair_samples output.
inline std::size_t pair_slot(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

struct LinkPair {
  Point tx;
  Point rx;
};

/// SINR at the receiver of pair `idx` with all pairs transmitting at once.
/// Path loss is max(dist, rho0)^-alpha. Throws InvalidParameter on an empty
/// set, mismatched powers, or alpha <= 2.
double sinr(std::span<const LinkPair> active, std::size_t idx, std::span<const double> powers, const ChannelParams& p);

/// (48 beta 2^(alpha-2) / (alpha-2))^(1/alpha). Throws InvalidParameter for
/// alpha <= 2 or beta <= 0.
double delta_of_beta(double beta, double alpha);

/// Two-part connectivity probability where links come from the channel model.
double channel_connectivity_probability(std::size_t n, double q, const ChannelParams& p, std::size_t trials,
                                        std::uint64_t base_seed, unsigned workers = 1);

/// Per-trial connectivity thresholds expressed as the deterministic threshold
/// distance (see threshold_distance). A trial is connected at transmit power
/// P_t iff its value is <= threshold_distance at that P_t. Draws are shared
/// across the whole sweep, so the resulting curve is monotone.
std::vector<double> channel_connectivity_thresholds(std::size_t n, double q, const ChannelParams& p,
                                                    std::size_t trials, std::uint64_t base_seed,
                                                    unsigned workers = 1);

}  // namespace wanet
