#include "wanet/routing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>

#include "wanet/errors.hpp"

namespace wanet {
namespace {

double point_segment_distance(Point p, Point a, Point b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a.x + t * vx, a.y + t * vy});
}

std::size_t chebyshev(CellCoord a, CellCoord b) {
  const auto di = a.i > b.i ? a.i - b.i : b.i - a.i;
  const auto dj = a.j > b.j ? a.j - b.j : b.j - a.j;
  return std::max(di, dj);
}

// Breadth-first search over non-empty cells. Neighbours are expanded nearest
// to the S-D segment first, then by lower id, which fixes the parent of every
// cell and hence the returned shortest path.
template <typename Allowed>
std::optional<std::vector<CellId>> shortest_path(const CellGrid& g, CellId from, CellId to, Point src, Point dst,
                                                 Allowed&& allowed) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(g.cell_count(), kUnseen);
  std::deque<CellId> frontier{from};
  parent[from] = from;
  while (!frontier.empty()) {
    const CellId c = frontier.front();
    frontier.pop_front();
    if (c == to) break;
    std::vector<CellId> next;
    for (CellId nb : g.neighbors(c))
      if (parent[nb] == kUnseen && !g.is_empty(nb) && allowed(nb)) next.push_back(nb);
    std::sort(next.begin(), next.end(), [&](CellId a, CellId b) {
      const double da = point_segment_distance(g.center(a), src, dst);
      const double db = point_segment_distance(g.center(b), src, dst);
      return da != db ? da < db : a < b;
    });
    for (CellId nb : next) {
      parent[nb] = c;
      frontier.push_back(nb);
    }
  }
  if (parent[to] == kUnseen) return std::nullopt;
  std::vector<CellId> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Cut any loop so each cell appears once; adjacency is preserved.
void erase_loops(std::vector<CellId>& cells, std::size_t cell_count) {
  constexpr auto kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(cell_count, kAbsent);
  std::vector<CellId> out;
  out.reserve(cells.size());
  for (CellId c : cells) {
    if (position[c] != kAbsent) {
      const std::size_t keep = position[c] + 1;
      for (std::size_t k = keep; k < out.size(); ++k) position[out[k]] = kAbsent;
      out.resize(keep);
      continue;
    }
    position[c] = out.size();
    out.push_back(c);
  }
  cells = std::move(out);
}

}  // namespace

std::size_t LoadMap::max() const noexcept {
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

std::size_t LoadMap::total() const noexcept {
  std::size_t sum = 0;
  for (std::size_t y : load) sum += y;
  return sum;
}

std::vector<CellId> cells_on_segment(Point src, Point dst, const CellGrid& g) {
  CellCoord c = g.cell_of(src);
  const CellCoord end = g.cell_of(dst);
  std::vector<CellId> out{g.id(c)};

  const double a = g.side();
  const double dx = dst.x - src.x;
  const double dy = dst.y - src.y;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto first_crossing = [a](double origin, double delta, std::size_t cell) {
    if (delta > 0.0) return ((static_cast<double>(cell) + 1.0) * a - origin) / delta;
    if (delta < 0.0) return (static_cast<double>(cell) * a - origin) / delta;
    return kInf;
  };
  double t_x = first_crossing(src.x, dx, c.i);
  double t_y = first_crossing(src.y, dy, c.j);
  const double step_tx = dx != 0.0 ? a / std::abs(dx) : kInf;
  const double step_ty = dy != 0.0 ? a / std::abs(dy) : kInf;

  const std::size_t limit = 2 * g.per_axis() + 2;
  while (!(c == end) && out.size() <= limit) {
    bool step_x;
    if (c.i == end.i)
      step_x = false;
    else if (c.j == end.j)
      step_x = true;
    else
      step_x = t_x <= t_y + 1e-12;

    if (step_x) {
      c.i = end.i > c.i ? c.i + 1 : c.i - 1;
      t_x += step_tx;
    } else {
      c.j = end.j > c.j ? c.j + 1 : c.j - 1;
      t_y += step_ty;
    }
    out.push_back(g.id(c));
  }
  return out;
}

Route route_flow(const CellGrid& g, const Deployment& d, const Flow& flow, std::size_t flow_id,
                 ReroutePolicy policy) {
  const Point src = d.positions[flow.source];
  const Point dst = d.positions[flow.destination];
  const std::vector<CellId> line = cells_on_segment(src, dst, g);
  if (g.is_empty(line.front()) || g.is_empty(line.back())) throw RoutingFailure(flow_id);

  Route route;
  route.flow_id = flow_id;
  route.cells.push_back(line.front());

  std::size_t i = 1;
  while (i < line.size()) {
    if (!g.is_empty(line[i])) {
      route.cells.push_back(line[i++]);
      continue;
    }
    if (policy == ReroutePolicy::kNone) throw RoutingFailure(flow_id);
    route.rerouted = true;

    std::size_t resume = i + 1;
    while (g.is_empty(line[resume])) ++resume;

    const CellId from = route.cells.back();
    const std::span<const CellId> stretch(line.data() + (i - 1), resume - i + 2);
    auto in_band = [&](CellId c) {
      const CellCoord cc = g.coord(c);
      return std::any_of(stretch.begin(), stretch.end(),
                         [&](CellId s) { return chebyshev(cc, g.coord(s)) <= kDetourBand; });
    };
    if (auto detour = shortest_path(g, from, line[resume], src, dst, in_band)) {
      route.cells.insert(route.cells.end(), detour->begin() + 1, detour->end());
      i = resume + 1;
      continue;
    }
    auto global = shortest_path(g, from, line.back(), src, dst, [](CellId) { return true; });
    if (!global) throw RoutingFailure(flow_id);
    route.cells.insert(route.cells.end(), global->begin() + 1, global->end());
    break;
  }
  erase_loops(route.cells, g.cell_count());
  return route;
}

LoadMap cell_loads(std::span<const Route> routes, const CellGrid& g) {
  LoadMap map;
  map.load.assign(g.cell_count(), 0);
  std::vector<std::size_t> last_seen(g.cell_count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < routes.size(); ++r) {
    for (CellId c : routes[r].cells) {
      if (last_seen[c] == r) continue;
      last_seen[c] = r;
      ++map.load[c];
    }
  }
  return map;
}

double achieved_rate(const LoadMap& loads, const MacParams& mac, std::size_t clusters) {
  const std::size_t bottleneck = loads.max();
  if (bottleneck == 0) throw UndefinedRate("no cell carries traffic");
  if (clusters == 0) throw InvalidParameter("cluster dimension M must be >= 1");
  const double m = static_cast<double>(clusters);
  return mac.bits_per_slot / (m * m * static_cast<double>(bottleneck));
}

double measure_delay(std::span<const Route> routes, double slot_time) {
  if (routes.empty()) throw InvalidParameter("delay needs at least one route");
  double hops = 0.0;
  for (const Route& r : routes) hops += static_cast<double>(r.hops());
  return slot_time * hops / static_cast<double>(routes.size());
}

}  // namespace wanet
