#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dilmax/dyadic.hpp"
#include "dilmax/errors.hpp"

using dilmax::Dyadic;
using dilmax::DyadicInterval;

TEST(Dyadic, NormalizesMantissa) {
  const Dyadic a(12, 0);
  EXPECT_EQ(a.mantissa(), 3);
  EXPECT_EQ(a.exponent(), 2);
  EXPECT_EQ(Dyadic(0, 17), Dyadic());
}

TEST(Dyadic, FromDoubleIsExact) {
  for (double v : {0.375, -3.0, 1.0, 0.125, 1e-300, 6.02e23, -0.0}) {
    EXPECT_EQ(Dyadic::from_double(v).to_double(), v) << v;
  }
  EXPECT_THROW(Dyadic::from_double(std::nan("")), std::exception);
}

TEST(Dyadic, OrderingMatchesDoubles) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng), b = u(rng);
    EXPECT_EQ(Dyadic::from_double(a) < Dyadic::from_double(b), a < b);
  }
}

TEST(Dyadic, AdditionIsExact) {
  // 2^30 + 2^-30 is not representable as a double but is as a dyadic.
  const Dyadic big = Dyadic::power_of_two(30);
  const Dyadic tiny = Dyadic::power_of_two(-30);
  const Dyadic sum = big + tiny;
  EXPECT_GT(sum, big);
  EXPECT_EQ(sum - big, tiny);
  EXPECT_EQ(Dyadic(3, -2) + Dyadic(1, -3), Dyadic(7, -3));
  // Sums needing more than 63 mantissa bits are refused, not rounded.
  EXPECT_THROW(Dyadic::power_of_two(40) + Dyadic::power_of_two(-40), dilmax::InvalidArgument);
}

TEST(Dyadic, ScaledHandlesHugeShifts) {
  const Dyadic x = Dyadic(5, -2).scaled(1'000'000'000);
  EXPECT_EQ(x.scaled(-1'000'000'000), Dyadic(5, -2));
  EXPECT_TRUE(std::isinf(x.to_double()));
  EXPECT_GT(x, Dyadic(1, 1'000'000'000));
}

TEST(DyadicInterval, ContainsAndIntersects) {
  const DyadicInterval a{Dyadic(3, -2), Dyadic(5, -2)};
  const DyadicInterval b{Dyadic(7, -3), Dyadic(9, -3)};
  const DyadicInterval c{Dyadic(5, -2), Dyadic(2, 0)};
  EXPECT_TRUE(a.contains(b));
  EXPECT_FALSE(b.contains(a));
  EXPECT_TRUE(a.intersects(c));  // shared endpoint
  EXPECT_FALSE(b.intersects(c));
  EXPECT_TRUE(a.scaled(3).contains(Dyadic(8, 0)));
}
