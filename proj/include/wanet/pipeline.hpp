#pragma once

#include <cstddef>

#include "wanet/mac.hpp"
#include "wanet/percolation.hpp"
#include "wanet/rng.hpp"

namespace wanet {

/// Everything measured on one deployment: tiling, schedule, routing and the
/// resulting rate, capacity and delay.
struct TrialMetrics {
  std::size_t flows = 0;
  std::size_t routed = 0;
  std::size_t routing_failures = 0;
  std::size_t rerouted = 0;
  std::size_t cells_per_axis = 0;
  std::size_t clusters = 0;
  OccupancyStats occupancy;
  bool strict_percolation = false;
  bool unique_component = false;
  std::size_t max_load = 0;
  double rate = 0.0;        // lambda, bits/slot per flow; 0 when nothing was routed
  double capacity = 0.0;    // routed flows x rate
  double delay = 0.0;       // mean hops at unit slot time
  double mean_sd_distance = 0.0;
};

/// deployment -> failures -> flows -> grid (side r / sqrt 2) -> TDMA ->
/// routing -> loads -> rate and delay. Failed flows are counted and left out
/// of rate and delay.
TrialMetrics run_trial(std::size_t n, double q, double radius, const MacParams& mac, SeedSpec seed);

}  // namespace wanet
