#include "wanet/channel.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>

#include "wanet/errors.hpp"
#include "wanet/parallel.hpp"
#include "wanet/topology.hpp"

namespace wanet {
namespace {

double clamp_distance(const ChannelParams& p, double dist) {
  if (dist < p.rho0) {
    static std::once_flag warned;
    std::call_once(warned, [] { std::clog << "wanet: link distance below rho0 clamped to rho0\n"; });
    return p.rho0;
  }
  return dist;
}

double fading_term(const ChannelParams& p, double gain) {
  if (!p.fading_enabled) return 0.0;
  return p.fading_mode == FadingMode::kDecibel ? 10.0 * std::log10(gain) : gain;
}

// Factor m with: link iff max(dist, rho0) < threshold_distance * m.
double margin_factor(const ChannelParams& p, const LinkSample& s) {
  return std::pow(10.0, (s.shadow_db + fading_term(p, s.fading_gain)) / (10.0 * p.alpha));
}

}  // namespace

void validate(const ChannelParams& p) {
  if (!(p.sigma_db >= 0.0)) throw InvalidParameter("shadowing spread sigma must be >= 0");
  if (!(p.rho0 > 0.0)) throw InvalidParameter("rho0 must be positive");
  if (!(p.beta > 0.0)) throw InvalidParameter("SINR threshold beta must be positive");
  if (!(p.alpha > 0.0)) throw InvalidParameter("path-loss exponent must be positive");
  if (!(p.noise >= 0.0)) throw InvalidParameter("noise power must be >= 0");
}

double received_power_dbm(const ChannelParams& p, double dist, double shadow_db, double fading_gain) {
  const double d = clamp_distance(p, dist);
  return p.tx_power_dbm - 10.0 * p.alpha * std::log10(d) + shadow_db + fading_term(p, fading_gain);
}

double threshold_distance(const ChannelParams& p) {
  return std::pow(10.0, (p.tx_power_dbm - p.min_rx_power_dbm) / (10.0 * p.alpha));
}

double tx_power_for_radius(const ChannelParams& p, double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("radius must be positive");
  return p.min_rx_power_dbm + 10.0 * p.alpha * std::log10(radius);
}

LinkSample draw_link_sample(const ChannelParams& p, Engine& engine) {
  LinkSample s;
  if (p.sigma_db > 0.0) s.shadow_db = std::normal_distribution<double>(0.0, p.sigma_db)(engine);
  if (p.fading_enabled) s.fading_gain = std::exponential_distribution<double>(1.0)(engine);
  return s;
}

bool sample_link(Point a, Point b, const ChannelParams& p, Engine& engine) {
  const LinkSample s = draw_link_sample(p, engine);
  return received_power_dbm(p, distance(a, b), s.shadow_db, s.fading_gain) > p.min_rx_power_dbm;
}

bool sample_link(Point a, Point b, const ChannelParams& p, SeedSpec seed) {
  Engine engine = make_engine(seed, Stream::kChannel);
  return sample_link(a, b, p, engine);
}

std::vector<LinkSample> draw_pair_samples(std::size_t n, const ChannelParams& p, SeedSpec seed) {
  std::vector<LinkSample> out(n < 2 ? 0 : n * (n - 1) / 2);
  Engine engine = make_engine(seed, Stream::kChannel);
  for (auto& s : out) s = draw_link_sample(p, engine);
  return out;
}

double sinr(std::span<const LinkPair> active, std::size_t idx, std::span<const double> powers,
            const ChannelParams& p) {
  if (active.empty()) throw InvalidParameter("SINR needs at least one active pair");
  if (idx >= active.size()) throw InvalidParameter("pair index out of range");
  if (powers.size() != active.size()) throw InvalidParameter("one transmit power per pair required");
  if (!(p.alpha > 2.0)) throw InvalidParameter("SINR model needs alpha > 2");
  auto gain = [&](Point a, Point b) { return std::pow(std::max(distance(a, b), p.rho0), -p.alpha); };
  const Point rx = active[idx].rx;
  double interference = 0.0;
  for (std::size_t k = 0; k < active.size(); ++k)
    if (k != idx) interference += powers[k] * gain(active[k].tx, rx);
  return powers[idx] * gain(active[idx].tx, rx) / (p.noise + interference);
}

double delta_of_beta(double beta, double alpha) {
  if (!(alpha > 2.0)) throw InvalidParameter("delta(beta) needs alpha > 2");
  if (!(beta > 0.0)) throw InvalidParameter("delta(beta) needs beta > 0");
  return std::pow(48.0 * beta * std::pow(2.0, alpha - 2.0) / (alpha - 2.0), 1.0 / alpha);
}

double channel_connectivity_probability(std::size_t n, double q, const ChannelParams& p, std::size_t trials,
                                        std::uint64_t base_seed, unsigned workers) {
  validate(p);
  if (trials == 0) throw InvalidParameter("trials must be at least 1");
  std::vector<std::uint8_t> connected(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) {
    const SeedSpec seed{base_seed, t};
    const Deployment d = place_nodes(n, seed);
    const FailureMask m = sample_failures(d, q, seed);
    const std::vector<LinkSample> samples = draw_pair_samples(n, p, seed);
    auto linked = [&](std::size_t i, std::size_t j) {
      const LinkSample& s = samples[i < j ? pair_slot(n, i, j) : pair_slot(n, j, i)];
      return received_power_dbm(p, distance(d.positions[i], d.positions[j]), s.shadow_db, s.fading_gain) >
             p.min_rx_power_dbm;
    };

    const std::vector<NodeIndex> alive = m.alive_nodes();
    if (alive.empty()) return;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeIndex> stack{alive.front()};
    seen[alive.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      ++reached;
      for (NodeIndex w : alive) {
        if (!seen[w] && linked(v, w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (reached != alive.size()) return;
    for (NodeIndex t2 = 0; t2 < n; ++t2) {
      if (!m.is_faulty(t2)) continue;
      bool covered = false;
      for (NodeIndex a : alive) {
        if (linked(t2, a)) {
          covered = true;
          break;
        }
      }
      if (!covered) return;
    }
    connected[t] = 1;
  });
  return static_cast<double>(std::count(connected.begin(), connected.end(), std::uint8_t{1})) /
         static_cast<double>(trials);
}

std::vector<double> channel_connectivity_thresholds(std::size_t n, double q, const ChannelParams& p,
                                                    std::size_t trials, std::uint64_t base_seed,
                                                    unsigned workers) {
  validate(p);
  if (trials == 0) throw InvalidParameter("trials must be at least 1");
  std::vector<double> out(trials, std::numeric_limits<double>::infinity());
  parallel_for(trials, workers, [&](std::size_t t) {
    const SeedSpec seed{base_seed, t};
    const Deployment d = place_nodes(n, seed);
    const FailureMask m = sample_failures(d, q, seed);
    const std::vector<LinkSample> samples = draw_pair_samples(n, p, seed);
    // Effective length: link iff max(dist, rho0) / margin < threshold distance.
    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dist = std::max(distance(d.positions[i], d.positions[j]), p.rho0);
        const double w = dist / margin_factor(p, samples[pair_slot(n, i, j)]);
        weights[i * n + j] = w;
        weights[j * n + i] = w;
      }
    }
    out[t] = connectivity_threshold_dense(weights, m);
  });
  return out;
}

}  // namespace wanet
