#include "wanet/analysis.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "wanet/errors.hpp"

namespace wanet {
namespace {

void check_domain(double n, double q) {
  if (!(n >= 2.0)) throw InvalidParameter("scaling laws need n >= 2");
  if (!(q >= 0.0 && q < 1.0)) throw InvalidParameter("scaling laws need 0 <= q < 1");
}

// Bisection for the root of an increasing function on [lo, hi]. Stops once the
// relative residual is below 1e-12 or the bracket stops shrinking.
RedundancyResult bisect(const std::function<double(double)>& f, double scale, double lo, double hi,
                        double q, double n) {
  double flo = f(lo);
  if (flo >= 0.0) return {lo, q > 0.0 ? lo / (n * q) : 0.0, std::abs(flo) / scale};
  if (f(hi) < 0.0) throw NumericalError("redundancy solver: no sign change in bracket");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (std::abs(fm) / scale < 1e-12) {
      lo = hi = mid;
      break;
    }
  }
  const double root = 0.5 * (lo + hi);
  return {root, q > 0.0 ? root / (n * q) : 0.0, std::abs(f(root)) / scale};
}

}  // namespace

double capacity_scaling(double n, double q) {
  check_domain(n, q);
  return std::sqrt(n * (1.0 - q) / std::log(n));
}

double delay_scaling(double n, double q) {
  check_domain(n, q);
  return std::sqrt(n * (1.0 - q) / std::log(n));
}

double capacity_scaling_3d(double n, double q) {
  check_domain(n, q);
  return std::pow(n * (1.0 - q) / std::log(n), 2.0 / 3.0);
}

double capacity_loss_ratio(double n, double q) {
  check_domain(n, q);
  if (!(n * (1.0 - q) >= 2.0)) throw InvalidParameter("capacity loss ratio needs n (1-q) >= 2");
  return std::sqrt(std::log(n * (1.0 - q)) / std::log(n));
}

RedundancyResult redundancy_to_baseline(double n, double q) {
  if (!(n >= 3.0)) throw InvalidParameter("redundancy solver needs n >= 3");
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("redundancy solver needs 0 < q < 1");
  const double target = n / std::log(n);
  auto residual = [&](double n1) { return (n * (1.0 - q) + n1) / std::log(n + n1) - target; };
  return bisect(residual, target, 0.0, 100.0 * n * q, q, n);
}

RedundancyResult redundancy_for_multiplier(double n, double q, double omega) {
  if (!(n >= 3.0)) throw InvalidParameter("redundancy solver needs n >= 3");
  if (!(q >= 0.0 && q < 1.0)) throw InvalidParameter("redundancy solver needs 0 <= q < 1");
  if (!(omega >= 0.0)) throw InvalidParameter("capacity multiplier omega must be >= 0");
  const double base = n * (1.0 - q) / std::log(n);
  const double target = (omega + 1.0) * (omega + 1.0) * base;
  auto residual = [&](double n1) { return (n * (1.0 - q) + n1) / std::log(n + n1) - target; };
  double hi = n;
  for (int doubling = 0; residual(hi) < 0.0; ++doubling) {
    if (doubling == 60) throw NumericalError("redundancy solver: no sign change in bracket");
    hi *= 2.0;
  }
  return bisect(residual, target, 0.0, hi, q, n);
}

}  // namespace wanet
