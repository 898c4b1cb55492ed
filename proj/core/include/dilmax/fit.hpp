#pragma once

#include <cmath>
#include <span>

#include "dilmax/errors.hpp"

namespace dilmax {

/// Ordinary least-squares slope of ys against xs.
inline double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InvalidArgument("slope fit needs two or more paired points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidArgument("slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

}  // namespace dilmax
