#pragma once

#include <cstddef>
#include <span>

namespace wanet {

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

/// Ordinary least squares of ln y on ln x. Pairs with a non-positive value
/// are dropped with a warning on stderr; fewer than three usable pairs
/// throws InvalidParameter.
ScalingFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Largest over smallest value; +inf if any value is non-positive.
double spread_ratio(std::span<const double> values);

}  // namespace wanet
