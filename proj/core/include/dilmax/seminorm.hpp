#pragma once

#include <cstdint>
#include <functional>

#include "dilmax/bump_calculus.hpp"
#include "dilmax/grid.hpp"

namespace dilmax {

/// Log-spaced radii xi_min * 2^(i / points_per_octave) up to xi_max.
struct SeminormSampling {
  double xi_min = 0x1p-20;
  double xi_max = 0x1p20;
  int points_per_octave = 64;
};

/// sup over sampled xi > 0 and a <= order of |xi|^a |d^a m / dxi^a|, order <= 2.
///
/// The bump-sum overload differentiates the profile exactly; the callback
/// overload uses central differences with step |xi| * 1e-4. Both report a
/// lower estimate of the true supremum (only sampled points are seen).
double mikhlin_seminorm(const bump::BumpSumMultiplier& m, int order, const SeminormSampling& s = {});
double mikhlin_seminorm(const std::function<grid::cplx(double)>& m, int order, const SeminormSampling& s = {});

/// sup over sampled 1/2 < xi < 3/2 and a <= order of |d^a/dxi^a (phi(xi) m(2^k xi))|,
/// phi the standard localizer; exact derivatives.
double localized_derivative_sup(const bump::BumpSumMultiplier& m, std::int64_t k, int order,
                                int samples = 2048);

}  // namespace dilmax
