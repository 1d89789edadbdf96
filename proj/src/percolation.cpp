#include "wanet/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wanet/errors.hpp"

namespace wanet {

CellGrid::CellGrid(double side, std::size_t k) : side_(side), k_(k), alive_(k * k), faulty_(k * k) {}

CellCoord CellGrid::cell_of(Point p) const noexcept {
  auto axis = [this](double v) {
    const double raw = std::floor(v / side_);
    if (raw <= 0.0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(raw), k_ - 1);
  };
  return {axis(p.x), axis(p.y)};
}

CellBounds CellGrid::bounds(CellId id) const noexcept {
  const CellCoord c = coord(id);
  const double x0 = static_cast<double>(c.i) * side_;
  const double y0 = static_cast<double>(c.j) * side_;
  const double x1 = c.i + 1 == k_ ? 1.0 : x0 + side_;
  const double y1 = c.j + 1 == k_ ? 1.0 : y0 + side_;
  return {x0, x1, y0, y1};
}

Point CellGrid::center(CellId id) const noexcept {
  const CellBounds b = bounds(id);
  return {0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
}

std::vector<CellId> CellGrid::neighbors(CellId id) const {
  const CellCoord c = coord(id);
  std::vector<CellId> out;
  out.reserve(4);
  if (c.i > 0) out.push_back(this->id({c.i - 1, c.j}));
  if (c.i + 1 < k_) out.push_back(this->id({c.i + 1, c.j}));
  if (c.j > 0) out.push_back(this->id({c.i, c.j - 1}));
  if (c.j + 1 < k_) out.push_back(this->id({c.i, c.j + 1}));
  return out;
}

void CellGrid::add(NodeIndex node, Point p, bool is_faulty) {
  const CellId cell = id(cell_of(p));
  (is_faulty ? faulty_ : alive_)[cell].push_back(node);
}

CellGrid build_grid(const Deployment& d, const FailureMask& m, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidParameter("cell side must lie in (0,1]");
  if (m.size() != d.size()) throw InvalidParameter("failure mask does not match deployment");
  // Shave a relative epsilon so that a = 1/3 gives k = 3, not 4.
  const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil((1.0 / a) * (1.0 - 1e-12))));
  CellGrid g(a, k);
  for (NodeIndex i = 0; i < d.size(); ++i) g.add(i, d.positions[i], m.is_faulty(i));
  return g;
}

OccupancyStats cell_occupancy_stats(const CellGrid& g) {
  OccupancyStats s;
  s.min = g.alive_count(0);
  std::size_t total = 0;
  for (CellId c = 0; c < g.cell_count(); ++c) {
    const std::size_t z = g.alive_count(c);
    s.min = std::min(s.min, z);
    s.max = std::max(s.max, z);
    total += z;
    if (z == 0) ++s.empty_cells;
  }
  s.mean = static_cast<double>(total) / static_cast<double>(g.cell_count());
  return s;
}

bool site_percolation_connected(const CellGrid& g, PercolationCriterion criterion) {
  if (criterion == PercolationCriterion::kStrict) {
    for (CellId c = 0; c < g.cell_count(); ++c)
      if (g.is_empty(c)) return false;
    return true;
  }

  std::vector<std::uint8_t> seen(g.cell_count(), 0);
  std::size_t clusters = 0;
  for (CellId start = 0; start < g.cell_count(); ++start) {
    if (g.is_empty(start) || seen[start]) continue;
    if (++clusters > 1) return false;
    std::vector<CellId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const CellId c = stack.back();
      stack.pop_back();
      for (CellId nb : g.neighbors(c)) {
        if (!g.is_empty(nb) && !seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return clusters == 1;
}

double phase_threshold(std::size_t n, const PercolationParams& p) {
  if (n < 2) throw InvalidParameter("phase condition needs n >= 2");
  if (!(p.q_c > 0.0 && p.q_c < 1.0)) throw InvalidParameter("q_c must lie in (0,1)");
  if (!(p.c1 > 0.0)) throw InvalidParameter("c1 must be positive");
  return std::pow(p.q_c, 1.0 / (p.c1 * std::log(static_cast<double>(n))));
}

bool phase_condition(std::size_t n, double q, const PercolationParams& p) { return q < phase_threshold(n, p); }

double estimate_c1(const CellGrid& g, std::size_t n) {
  if (n < 2) throw InvalidParameter("c1 estimate needs n >= 2");
  return cell_occupancy_stats(g).mean / std::log(static_cast<double>(n));
}

}  // namespace wanet
