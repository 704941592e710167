#include "pmpg/affine.hpp"

#include <limits>

namespace pmpg {

double affine_invert(double mean, double sd, double x) {
  if (!(sd > 0.0) || !std::isfinite(sd))
    throw NumericError("affine_invert: degenerate propagation scale");
  const double v0 = (x - mean) / sd;
  if (affine_propagate(mean, sd, v0) == x) return v0;

  const double inf = std::numeric_limits<double>::infinity();
  // Bracket [lo, hi] with f(lo) < x <= f(hi); f is non-decreasing in v.
  double lo, hi;
  if (affine_propagate(mean, sd, v0) < x) {
    lo = v0;
    hi = v0;
    double step = std::fabs(v0) > 0 ? std::fabs(v0) * 1e-15 : 1e-300;
    for (int k = 0; k < 200 && affine_propagate(mean, sd, hi) < x; ++k) {
      hi = (hi >= 0 ? hi + step : std::nextafter(hi + step, inf));
      hi = std::nextafter(hi, inf);
      step *= 2;
    }
    if (affine_propagate(mean, sd, hi) < x) return v0;
  } else {
    hi = v0;
    lo = v0;
    double step = std::fabs(v0) > 0 ? std::fabs(v0) * 1e-15 : 1e-300;
    for (int k = 0; k < 200 && affine_propagate(mean, sd, lo) >= x; ++k) {
      lo = std::nextafter(lo - step, -inf);
      step *= 2;
    }
    if (affine_propagate(mean, sd, lo) >= x) return v0;
  }
  // Bisect to the smallest v with f(v) >= x.
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (affine_propagate(mean, sd, mid) >= x)
      hi = mid;
    else
      lo = mid;
  }
  if (affine_propagate(mean, sd, hi) == x) return hi;
  // x is not attainable; return the closer neighbour.
  const double below = affine_propagate(mean, sd, lo);
  const double above = affine_propagate(mean, sd, hi);
  return (x - below <= above - x) ? lo : hi;
}

}  // namespace pmpg
