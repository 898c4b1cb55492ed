#include <gtest/gtest.h>

#include <cmath>

#include "dilmax/errors.hpp"
#include "dilmax/jet.hpp"
#include "dilmax/profile.hpp"

using namespace dilmax;

namespace {

double central(const SmoothProfile& p, double r, double h = 1e-5) { return (p(r + h) - p(r - h)) / (2 * h); }

}  // namespace

TEST(Jet, ExpMatchesTaylorSeries) {
  const auto x = Jet<4>::variable(0.3);
  const auto e = exp(2.0 * x);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_NEAR(e.derivative(n), std::pow(2.0, n) * std::exp(0.6), 1e-12);
}

TEST(Jet, QuotientMatchesClosedForm) {
  // d^n/dx^n 1/x = (-1)^n n! / x^(n+1).
  const auto q = Jet<4>::constant(1.0) / Jet<4>::variable(2.0);
  const double fact[] = {1, 1, 2, 6, 24};
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_NEAR(q.derivative(n), (n % 2 ? -1 : 1) * fact[n] / std::pow(2.0, n + 1), 1e-14);
}

TEST(SmoothTransition, EndpointsAndSymmetry) {
  EXPECT_EQ(smooth_transition(-1.0), 0.0);
  EXPECT_EQ(smooth_transition(0.0), 0.0);
  EXPECT_EQ(smooth_transition(1.0), 1.0);
  EXPECT_DOUBLE_EQ(smooth_transition(0.5), 0.5);
  for (double t = 0.01; t < 1.0; t += 0.01) EXPECT_NEAR(smooth_transition(t) + smooth_transition(1 - t), 1.0, 1e-15);
}

TEST(SmoothTransition, JetMatchesScalarAndDifferences) {
  for (double t : {0.1, 0.3, 0.5, 0.77}) {
    const auto j = smooth_transition(ProfileJet::variable(t));
    EXPECT_NEAR(j.value(), smooth_transition(t), 1e-15);
    const double h = 1e-5;
    EXPECT_NEAR(j.derivative(1), (smooth_transition(t + h) - smooth_transition(t - h)) / (2 * h), 1e-8);
  }
}

TEST(StandardBump, SupportAndFlatRegion) {
  const auto& phi = SmoothProfile::standard_bump();
  EXPECT_EQ(phi(0.75), 0.0);
  EXPECT_EQ(phi(1.25), 0.0);
  EXPECT_EQ(phi(0.5), 0.0);
  EXPECT_EQ(phi(2.0), 0.0);
  for (double r = 0.875; r <= 1.125; r += 1.0 / 64) EXPECT_EQ(phi(r), 1.0);
  for (double r = 0.76; r < 1.25; r += 0.01) {
    EXPECT_GE(phi(r), 0.0);
    EXPECT_LE(phi(r), 1.0);
  }
}

TEST(StandardBump, DerivativesMatchFiniteDifferences) {
  const auto& phi = SmoothProfile::standard_bump();
  for (double r : {0.8, 0.84, 1.15, 1.2}) EXPECT_NEAR(phi.derivative(r, 1), central(phi, r), 1e-6);
  // Second derivative against differences of the exact first derivative.
  const double h = 1e-5;
  for (double r : {0.8, 1.2})
    EXPECT_NEAR(phi.derivative(r, 2), (phi.derivative(r + h, 1) - phi.derivative(r - h, 1)) / (2 * h), 1e-4);
}

TEST(EnvelopeHat, FlatAtOrigin) {
  const auto& hat = SmoothProfile::envelope_hat();
  EXPECT_EQ(hat(0.0), 1.0);
  EXPECT_EQ(hat(1.0 / 16), 1.0);
  EXPECT_EQ(hat(0.125), 0.0);
  EXPECT_GT(hat(0.1), 0.0);
  EXPECT_LT(hat(0.1), 1.0);
}

TEST(SmoothProfile, RejectsInvalidIntervals) {
  EXPECT_THROW(SmoothProfile({Dyadic(1, 0), Dyadic(2, 0)}, {Dyadic(1, -1), Dyadic(3, -1)}), InvalidArgument);
  EXPECT_THROW(SmoothProfile({Dyadic(1, 0), Dyadic(2, 0)}, {Dyadic(3, -1), Dyadic(2, 0)}), InvalidArgument);
  EXPECT_THROW(SmoothProfile({Dyadic(-1, 0), Dyadic(2, 0)}, {Dyadic(0, 0), Dyadic(1, 0)}), InvalidArgument);
}

TEST(AnnulusCutoff, SupportAndTelescoping) {
  EXPECT_EQ(annulus_cutoff(0.5), 0.0);
  EXPECT_EQ(annulus_cutoff(1.5), 0.0);
  EXPECT_GT(annulus_cutoff(1.0), 0.0);
  for (double r = 1e-3; r < 1e3; r *= 1.37) {
    double sum = 0.0;
    for (int l = -40; l <= 40; ++l) sum += annulus_cutoff(std::ldexp(r, -l));
    EXPECT_NEAR(sum, 1.0, 1e-14) << r;
  }
}

TEST(AnnulusCutoff, JetAgreesWithScalar) {
  for (double r : {0.6, 0.7, 1.0, 1.2, 1.4}) {
    const auto j = annulus_cutoff(ProfileJet::variable(r));
    EXPECT_NEAR(j.value(), annulus_cutoff(r), 1e-15);
    const double h = 1e-6;
    EXPECT_NEAR(j.derivative(1), (annulus_cutoff(r + h) - annulus_cutoff(r - h)) / (2 * h), 1e-6);
  }
}
