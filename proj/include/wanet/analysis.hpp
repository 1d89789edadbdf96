#pragma once

#include <cstddef>

namespace wanet {

// Closed-form order-representative values (constant 1, natural logarithm).
// All take n >= 2 and 0 <= q < 1 and throw InvalidParameter otherwise.

/// sqrt(n (1-q) / ln n).
double capacity_scaling(double n, double q);

/// Same functional form as capacity_scaling.
double delay_scaling(double n, double q);

/// (n (1-q) / ln n)^(2/3), the three-dimensional counterpart.
double capacity_scaling_3d(double n, double q);

/// eta = sqrt(ln(n (1-q)) / ln n). Requires n (1-q) >= 2.
double capacity_loss_ratio(double n, double q);

struct RedundancyResult {
  double n1 = 0.0;       // redundant nodes (continuous solution)
  double epsilon = 0.0;  // n1 / (n q); 0 when q == 0
  double residual = 0.0; // relative residual of the defining equation at n1
};

/// Smallest n1 with (n(1-q) + n1) / ln(n + n1) = n / ln n, by bisection on
/// [0, 100 n q]. Requires 0 < q < 1 and n >= 3; throws NumericalError when
/// the bracket shows no sign change.
RedundancyResult redundancy_to_baseline(double n, double q);

/// n1 with sqrt((n(1-q) + n1) / ln(n + n1)) = (omega + 1) sqrt(n(1-q) / ln n).
/// The upper end of the bracket doubles until the residual changes sign.
RedundancyResult redundancy_for_multiplier(double n, double q, double omega);

}  // namespace wanet
