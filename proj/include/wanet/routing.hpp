#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wanet/deployment.hpp"
#include "wanet/mac.hpp"
#include "wanet/percolation.hpp"

namespace wanet {

/// Cell-level path of one flow. Consecutive cells are 4-neighbours, every
/// cell holds an alive relay and no cell repeats.
struct Route {
  std::size_t flow_id = 0;
  std::vector<CellId> cells;
  bool rerouted = false;

  std::size_t hops() const noexcept { return cells.empty() ? 0 : cells.size() - 1; }
};

/// Number of routes through each cell (Y^j).
struct LoadMap {
  std::vector<std::size_t> load;

  std::size_t max() const noexcept;
  std::size_t total() const noexcept;
};

enum class ReroutePolicy {
  kLocalDetour,  // detour within a band around the line, then global search
  kNone,         // any empty cell on the line is a routing failure
};

/// Lateral band (in cells) searched before falling back to a global search.
inline constexpr std::size_t kDetourBand = 4;

/// 4-connected cell cover of the segment src -> dst, in travel order. Where
/// the segment crosses a cell corner the horizontal step comes first.
std::vector<CellId> cells_on_segment(Point src, Point dst, const CellGrid& g);

/// Routes one flow along its S-D line. Empty cells on the line are bypassed
/// by the shortest detour through non-empty cells within kDetourBand cells
/// of the line, ties broken toward the line and then the lower cell id; if
/// none exists the remainder is a shortest path over all non-empty cells.
/// Throws RoutingFailure(flow_id) when the destination is unreachable.
Route route_flow(const CellGrid& g, const Deployment& d, const Flow& flow, std::size_t flow_id,
                 ReroutePolicy policy = ReroutePolicy::kLocalDetour);

/// Each route counts once in every cell it visits.
LoadMap cell_loads(std::span<const Route> routes, const CellGrid& g);

/// Per-flow rate W / (M^2 max_j Y^j): every cell is served once per M^2
/// slots and shares the slot among the routes crossing it. Throws
/// UndefinedRate when no cell carries traffic.
double achieved_rate(const LoadMap& loads, const MacParams& mac, std::size_t clusters);

/// slot_time x mean hop count. Throws InvalidParameter on an empty list.
double measure_delay(std::span<const Route> routes, double slot_time = 1.0);

}  // namespace wanet
