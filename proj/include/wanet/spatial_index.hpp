#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "wanet/deployment.hpp"
#include "wanet/geometry.hpp"

namespace wanet {

/// Uniform bucket grid over [0,1]^2 holding a subset of deployment nodes.
/// Bucket width is at least the requested width; the bucket count is capped
/// near the member count so tiny radii do not allocate huge grids.
class SpatialIndex {
 public:
  SpatialIndex(std::span<const Point> positions, std::span<const NodeIndex> members, double min_bucket_width)
      : positions_(positions) {
    const double cap = 2.0 * std::ceil(std::sqrt(static_cast<double>(members.size()))) + 1.0;
    const double wanted = min_bucket_width > 0.0 ? std::floor(1.0 / min_bucket_width) : cap;
    dim_ = static_cast<std::size_t>(std::clamp(wanted, 1.0, cap));
    width_ = 1.0 / static_cast<double>(dim_);
    start_.assign(dim_ * dim_ + 1, 0);
    for (NodeIndex i : members) ++start_[bucket_of(positions_[i]) + 1];
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    items_.resize(members.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (NodeIndex i : members) items_[fill[bucket_of(positions_[i])]++] = i;
  }

  double bucket_width() const noexcept { return width_; }

  /// Calls fn(index, distance) for every member within `radius` of p (inclusive).
  template <typename Fn>
  void for_each_within(Point p, double radius, Fn&& fn) const {
    const auto rings = static_cast<long>(std::ceil(radius / width_));
    const long bx = axis_bucket(p.x);
    const long by = axis_bucket(p.y);
    const long d = static_cast<long>(dim_);
    for (long x = std::max(0L, bx - rings); x <= std::min(d - 1, bx + rings); ++x) {
      for (long y = std::max(0L, by - rings); y <= std::min(d - 1, by + rings); ++y) {
        const std::size_t b = static_cast<std::size_t>(x) * dim_ + static_cast<std::size_t>(y);
        for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
          const NodeIndex j = items_[k];
          const double dist = distance(p, positions_[j]);
          if (dist <= radius) fn(j, dist);
        }
      }
    }
  }

  /// Distance from p to the nearest member; +inf when the index is empty.
  double nearest_distance(Point p) const {
    double best2 = std::numeric_limits<double>::infinity();
    if (items_.empty()) return best2;
    const long bx = axis_bucket(p.x);
    const long by = axis_bucket(p.y);
    const long d = static_cast<long>(dim_);
    for (long ring = 0; ring < d; ++ring) {
      for (long x = bx - ring; x <= bx + ring; ++x) {
        if (x < 0 || x >= d) continue;
        const bool edge_col = (x == bx - ring || x == bx + ring);
        for (long y = by - ring; y <= by + ring; ++y) {
          if (y < 0 || y >= d) continue;
          if (!edge_col && y != by - ring && y != by + ring) continue;
          const std::size_t b = static_cast<std::size_t>(x) * dim_ + static_cast<std::size_t>(y);
          for (std::size_t k = start_[b]; k < start_[b + 1]; ++k)
            best2 = std::min(best2, squared_distance(p, positions_[items_[k]]));
        }
      }
      // Buckets beyond this ring are at least ring*width away.
      const double reach = static_cast<double>(ring) * width_;
      if (best2 <= reach * reach) break;
    }
    return std::sqrt(best2);
  }

 private:
  long axis_bucket(double v) const noexcept {
    const long d = static_cast<long>(dim_);
    return std::clamp(static_cast<long>(v * static_cast<double>(dim_)), 0L, d - 1);
  }
  std::size_t bucket_of(Point p) const noexcept {
    return static_cast<std::size_t>(axis_bucket(p.x)) * dim_ + static_cast<std::size_t>(axis_bucket(p.y));
  }

  std::span<const Point> positions_;
  std::size_t dim_ = 1;
  double width_ = 1.0;
  std::vector<std::size_t> start_;
  std::vector<NodeIndex> items_;
};

}  // namespace wanet
