#include <gtest/gtest.h>

#include <cmath>

#include "dilmax/errors.hpp"
#include "dilmax/seminorm.hpp"

using namespace dilmax;
using bump::BumpSumMultiplier;

namespace {

// sup over a fine linear grid of r^a |d^a Phi| with a <= 1, derivatives by
// central differences of the profile values.
double fine_sup_order1(const SmoothProfile& p) {
  double best = 0.0;
  const double h = 1e-6;
  for (double r = 0.75; r <= 1.25; r += 1e-5) {
    best = std::max(best, p(r));
    best = std::max(best, r * std::abs(p(r + h) - p(r - h)) / (2 * h));
  }
  return best;
}

}  // namespace

TEST(Mikhlin, ConstantSymbolIsExactlyOne) {
  for (int j = 0; j <= 2; ++j) EXPECT_EQ(mikhlin_seminorm([](double) { return grid::cplx(1.0); }, j), 1.0);
}

TEST(Mikhlin, SingleBumpOrderZeroIsOne) {
  EXPECT_EQ(mikhlin_seminorm(BumpSumMultiplier({{0, 1.0}}), 0), 1.0);
  EXPECT_EQ(mikhlin_seminorm(BumpSumMultiplier({{0, 1.0}, {3, -2.0}}), 0), 2.0);
}

TEST(Mikhlin, ExactAndDifferenceEstimatesAgree) {
  const BumpSumMultiplier m({{0, 1.0}, {2, grid::cplx(0, -1)}, {5, 0.5}});
  for (int j = 1; j <= 2; ++j) {
    const double exact = mikhlin_seminorm(m, j);
    const double fd = mikhlin_seminorm([&](double xi) { return m(xi); }, j);
    EXPECT_NEAR(exact, fd, 1e-3 * exact) << j;
  }
}

TEST(Mikhlin, SampledSupApproachesFineSup) {
  const BumpSumMultiplier m({{0, 1.0}});
  const double ref = fine_sup_order1(SmoothProfile::standard_bump());
  const double got = mikhlin_seminorm(m, 1, {0x1p-4, 0x1p4, 512});
  EXPECT_LE(got, ref * (1 + 1e-6));
  EXPECT_GE(got, ref * 0.999);
}

TEST(Mikhlin, RejectsBadArguments) {
  const BumpSumMultiplier m({{0, 1.0}});
  EXPECT_THROW(mikhlin_seminorm(m, 3), InvalidArgument);
  EXPECT_THROW(mikhlin_seminorm(m, 1, {1.0, 0.5, 8}), InvalidArgument);
  EXPECT_THROW(localized_derivative_sup(m, 0, 5), InvalidArgument);
}

TEST(LocalizedDerivative, MatchesDifferences) {
  const BumpSumMultiplier m({{0, 1.0}, {1, -1.0}});
  const double got = localized_derivative_sup(m, 0, 1);
  double ref = 0.0;
  const double h = 1e-6;
  const auto g = [&](double xi) { return annulus_cutoff(xi) * m(xi); };
  for (int i = 1; i < 2048; ++i) {
    const double xi = 0.5 + i / 2048.0;
    ref = std::max({ref, std::abs(g(xi)), std::abs(g(xi + h) - g(xi - h)) / (2 * h)});
  }
  EXPECT_NEAR(got, ref, 1e-5 * ref);
  // Far octaves see nothing of the multiplier.
  EXPECT_EQ(localized_derivative_sup(m, 10, 4), 0.0);
}
