#include "wanet/mac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wanet/errors.hpp"

namespace wanet {
namespace {

double clamp1(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Closest pair of points between two axis-aligned rectangles.
std::pair<Point, Point> closest_points(const CellBounds& a, const CellBounds& b) {
  auto axis = [](double a0, double a1, double b0, double b1) -> std::pair<double, double> {
    if (a1 < b0) return {a1, b0};
    if (b1 < a0) return {a0, b1};
    const double lo = std::max(a0, b0);
    const double hi = std::min(a1, b1);
    const double mid = 0.5 * (lo + hi);
    return {mid, mid};
  };
  const auto [ax, bx] = axis(a.x0, a.x1, b.x0, b.x1);
  const auto [ay, by] = axis(a.y0, a.y1, b.y0, b.y1);
  return {{ax, ay}, {bx, by}};
}

bool worst_case_pair_feasible(const CellGrid& g, CellId a, CellId b, double delta_prime, double r) {
  const CellBounds ba = g.bounds(a);
  const CellBounds bb = g.bounds(b);
  const auto [pa, pb] = closest_points(ba, bb);
  const double d = distance(pa, pb);

  Point dir;
  if (d > 0.0) {
    dir = {(pb.x - pa.x) / d, (pb.y - pa.y) / d};
  } else {
    const Point ca = g.center(a);
    const Point cb = g.center(b);
    const double len = distance(ca, cb);
    dir = {(cb.x - ca.x) / len, (cb.y - ca.y) / len};
  }

  std::array<LinkPair, 2> links;
  if (d >= r) {
    // Both links at full length r, receivers pointing into the gap.
    links[0] = {pa, {pa.x + dir.x * r, pa.y + dir.y * r}};
    links[1] = {pb, {pb.x - dir.x * r, pb.y - dir.y * r}};
  } else {
    // The receiver of cell a can sit inside cell b on top of b's transmitter.
    const double width = std::min(bb.x1 - bb.x0, bb.y1 - bb.y0);
    const double step = 0.5 * std::min(r - d, width);
    const Point rx{pb.x + dir.x * step, pb.y + dir.y * step};
    links[0] = {pa, rx};
    links[1] = {rx, {clamp1(rx.x - dir.x * step, 0.0, 1.0), clamp1(rx.y - dir.y * step, 0.0, 1.0)}};
  }
  return protocol_feasible(links, delta_prime, r).feasible;
}

}  // namespace

double effective_delta(const MacParams& p) {
  if (!(p.delta >= 0.0)) throw InvalidParameter("interference guard delta must be >= 0");
  if (!(p.bits_per_slot > 0.0)) throw InvalidParameter("bits per slot W must be positive");
  if (p.antenna == Antenna::kOmnidirectional) return p.delta;
  if (!p.theta) throw InvalidParameter("directional antenna requires a beamwidth theta");
  const double theta = *p.theta;
  if (!(theta > 0.0 && theta <= 2.0 * std::numbers::pi)) throw InvalidParameter("beamwidth must lie in (0, 2 pi]");
  return std::min(p.delta, std::sin(theta / 2.0));
}

std::size_t cluster_size(double delta_prime) {
  if (!(delta_prime >= 0.0)) throw InvalidParameter("delta' must be >= 0");
  const double bound = 1.0 + kSqrt2 * (2.0 + delta_prime);
  // Strictly greater: an integer-valued bound still moves up by one.
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

std::vector<std::vector<CellId>> Schedule::cells_by_phase() const {
  std::vector<std::vector<CellId>> out(phase_count());
  for (CellId c = 0; c < phase.size(); ++c) out[phase[c]].push_back(c);
  return out;
}

Schedule build_tdma(const CellGrid& g, std::size_t clusters) {
  if (clusters < 1) throw InvalidParameter("cluster dimension M must be >= 1");
  Schedule s;
  s.clusters = clusters;
  s.phase.resize(g.cell_count());
  for (CellId c = 0; c < g.cell_count(); ++c) {
    const CellCoord cc = g.coord(c);
    s.phase[c] = (cc.i % clusters) * clusters + (cc.j % clusters);
  }
  return s;
}

ProtocolCheck protocol_feasible(std::span<const LinkPair> active, double delta_prime, double r) {
  if (!(delta_prime >= 0.0)) throw InvalidParameter("delta' must be >= 0");
  std::vector<double> length(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    length[i] = distance(active[i].tx, active[i].rx);
    if (length[i] > r * (1.0 + 1e-9)) throw InfeasibleLink("link longer than the transmission radius");
  }

  ProtocolCheck check;
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == i) continue;
      if (distance(active[k].tx, active[i].rx) < (1.0 + delta_prime) * length[i]) check.feasible = false;
      if (k > i && distance(active[k].rx, active[i].rx) < 0.5 * delta_prime * (length[i] + length[k]))
        check.guard_disks_disjoint = false;
    }
  }
  return check;
}

bool verify_schedule(const CellGrid& g, const Schedule& s, double delta_prime, double r) {
  if (s.phase.size() != g.cell_count()) throw InvalidParameter("schedule does not match grid");
  for (const auto& cells : s.cells_by_phase()) {
    for (std::size_t x = 0; x < cells.size(); ++x)
      for (std::size_t y = x + 1; y < cells.size(); ++y)
        if (!worst_case_pair_feasible(g, cells[x], cells[y], delta_prime, r)) return false;
  }
  return true;
}

std::optional<NodeIndex> select_relay(const CellGrid& g, const Deployment& d, CellId cell) {
  const auto& members = g.alive(cell);
  if (members.empty()) return std::nullopt;
  const Point c = g.center(cell);
  NodeIndex best = members.front();
  double best_d2 = squared_distance(d.positions[best], c);
  for (NodeIndex v : members) {
    const double d2 = squared_distance(d.positions[v], c);
    if (d2 < best_d2 || (d2 == best_d2 && v < best)) {
      best = v;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace wanet
