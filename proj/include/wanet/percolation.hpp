#pragma once

#include <cstddef>
#include <vector>

#include "wanet/deployment.hpp"
#include "wanet/geometry.hpp"

namespace wanet {

struct CellCoord {
  std::size_t i = 0;  // column (x axis)
  std::size_t j = 0;  // row (y axis)

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

using CellId = std::size_t;

struct CellBounds {
  double x0, x1, y0, y1;
};

/// Tiling of [0,1]^2 into k x k squares of side a, k = ceil(1/a). Cell (i,j)
/// covers [i a, (i+1) a) x [j a, (j+1) a); the last row and column are closed
/// at 1 and may be narrower than a.
class CellGrid {
 public:
  CellGrid() = default;
  CellGrid(double side, std::size_t k);

  double side() const noexcept { return side_; }
  std::size_t per_axis() const noexcept { return k_; }
  std::size_t cell_count() const noexcept { return k_ * k_; }

  CellId id(CellCoord c) const noexcept { return c.i * k_ + c.j; }
  CellCoord coord(CellId id) const noexcept { return {id / k_, id % k_}; }
  CellCoord cell_of(Point p) const noexcept;
  CellBounds bounds(CellId id) const noexcept;
  Point center(CellId id) const noexcept;

  std::size_t alive_count(CellId id) const { return alive_[id].size(); }
  std::size_t faulty_count(CellId id) const { return faulty_[id].size(); }
  bool is_empty(CellId id) const { return alive_[id].empty(); }
  const std::vector<NodeIndex>& alive(CellId id) const { return alive_[id]; }
  const std::vector<NodeIndex>& faulty(CellId id) const { return faulty_[id]; }

  /// 4-neighbours in the fixed order left, right, down, up.
  std::vector<CellId> neighbors(CellId id) const;

  void add(NodeIndex node, Point p, bool is_faulty);

 private:
  double side_ = 1.0;
  std::size_t k_ = 1;
  std::vector<std::vector<NodeIndex>> alive_;
  std::vector<std::vector<NodeIndex>> faulty_;
};

/// Site-percolation constants. q_c is the critical site failure probability
/// of the square lattice.
struct PercolationParams {
  double q_c = 0.4073;
  double c1 = 1.0;
};

struct OccupancyStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::size_t empty_cells = 0;
};

enum class PercolationCriterion {
  kStrict,           // no cell empty of alive nodes
  kUniqueComponent,  // occupied cells form exactly one 4-connected cluster
};

/// Throws InvalidParameter unless 0 < a <= 1.
CellGrid build_grid(const Deployment& d, const FailureMask& m, double a);

/// Cell side used for routing at transmission radius r.
inline double cell_side_for_radius(double r) { return r / kSqrt2; }

OccupancyStats cell_occupancy_stats(const CellGrid& g);

bool site_percolation_connected(const CellGrid& g, PercolationCriterion criterion = PercolationCriterion::kStrict);

/// q_c^(1 / (c1 ln n)).
double phase_threshold(std::size_t n, const PercolationParams& p);

/// True iff q < phase_threshold(n, p). Throws InvalidParameter for n < 2.
bool phase_condition(std::size_t n, double q, const PercolationParams& p);

/// Occupancy constant measured on a grid: mean alive count per cell / ln n.
double estimate_c1(const CellGrid& g, std::size_t n);

}  // namespace wanet
