#include "wanet/pipeline.hpp"

#include <algorithm>
#include <vector>

#include "wanet/deployment.hpp"
#include "wanet/errors.hpp"
#include "wanet/routing.hpp"

namespace wanet {

TrialMetrics run_trial(std::size_t n, double q, double radius, const MacParams& mac, SeedSpec seed) {
  const Deployment d = place_nodes(n, seed);
  const FailureMask m = sample_failures(d, q, seed);
  const FlowSet flows = pair_flows(m, seed);
  const CellGrid grid = build_grid(d, m, std::min(cell_side_for_radius(radius), 1.0));

  TrialMetrics out;
  out.flows = flows.size();
  out.cells_per_axis = grid.per_axis();
  out.clusters = cluster_size(effective_delta(mac));
  out.occupancy = cell_occupancy_stats(grid);
  out.strict_percolation = site_percolation_connected(grid, PercolationCriterion::kStrict);
  out.unique_component = site_percolation_connected(grid, PercolationCriterion::kUniqueComponent);

  std::vector<Route> routes;
  routes.reserve(flows.size());
  double distance_sum = 0.0;
  for (std::size_t f = 0; f < flows.size(); ++f) {
    const Flow& flow = flows.pairs[f];
    distance_sum += distance(d.positions[flow.source], d.positions[flow.destination]);
    try {
      routes.push_back(route_flow(grid, d, flow, f));
      if (routes.back().rerouted) ++out.rerouted;
    } catch (const RoutingFailure&) {
      ++out.routing_failures;
    }
  }
  out.routed = routes.size();
  if (!flows.pairs.empty()) out.mean_sd_distance = distance_sum / static_cast<double>(flows.size());
  if (routes.empty()) return out;

  const LoadMap loads = cell_loads(routes, grid);
  out.max_load = loads.max();
  out.rate = achieved_rate(loads, mac, out.clusters);
  out.capacity = static_cast<double>(out.routed) * out.rate;
  out.delay = measure_delay(routes);
  return out;
}

}  // namespace wanet
