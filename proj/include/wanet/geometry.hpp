#pragma once

#include <cmath>

namespace wanet {

/// Position in the unit square.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Every distance in the library goes through this one expression so that a
// radius computed from distances compares exactly against them.
inline double distance(Point a, Point b) noexcept { return std::sqrt(squared_distance(a, b)); }

inline constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace wanet
