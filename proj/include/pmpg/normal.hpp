#pragma once

#include <cmath>

namespace pmpg {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log sqrt(2*pi)

/// log N(x; mean, var)
inline double normal_logpdf(double x, double mean, double var) {
  const double z = x - mean;
  return -0.5 * std::log(var) - 0.5 * z * z / var - kLogSqrt2Pi;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

/// Inverse standard-normal CDF (Wichura's AS 241, PPND16).
/// Accurate to roughly full double precision for p in (0,1).
double normal_quantile(double p);

}  // namespace pmpg
