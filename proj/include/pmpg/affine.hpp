#pragma once

#include <cmath>

#include "pmpg/errors.hpp"

namespace pmpg {

/// x = mean + sd * v. Every model with Gaussian innovations propagates
/// through this one expression so that inversion can reproduce the exact
/// floating-point value (the project is built with -ffp-contract=off, so the
/// expression evaluates identically everywhere).
inline double affine_propagate(double mean, double sd, double v) {
  return mean + sd * v;
}

/// Inverse of affine_propagate, preferring a v with
/// affine_propagate(mean, sd, v) == x bit-for-bit. The map is a
/// non-decreasing step function of v, so when x is attainable a short
/// bracket-and-bisect over adjacent doubles finds a preimage; otherwise the
/// nearest v is returned (within one rounding step of x).
double affine_invert(double mean, double sd, double x);

}  // namespace pmpg
