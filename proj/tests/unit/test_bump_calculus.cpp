#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dilmax/bump_calculus.hpp"
#include "dilmax/errors.hpp"
#include "oracles.hpp"

using namespace dilmax;
using namespace dilmax::bump;

namespace {

// Classifies by dense sampling of the closed support of the modulated
// envelope against the profile's flat set and open outer set, rescaled.
OverlapClass sampled_class(std::int64_t M, std::int64_t k, std::int64_t j, const SmoothProfile& prof) {
  const double c = std::ldexp(1.0, static_cast<int>(j)), r = 0.125;
  const double a = prof.outer_lo(), b = prof.outer_hi();
  const double fc = prof.flat().lo.to_double(), fd = prof.flat().hi.to_double();
  bool all_flat = true, none_inside = true;
  for (int i = 0; i <= 4000; ++i) {
    const double u = std::ldexp(c - r + 2 * r * i / 4000.0, static_cast<int>(k - M));
    all_flat &= fc <= u && u <= fd;
    none_inside &= !(a < u && u < b);
  }
  return all_flat ? OverlapClass::Flat : none_inside ? OverlapClass::Disjoint : OverlapClass::Partial;
}

const SmoothProfile& wide_profile() {
  static const SmoothProfile p({Dyadic(1, -1), Dyadic(5, -1)}, {Dyadic(1, 0), Dyadic(3, -1)});
  return p;
}

std::complex<double> wave(std::int64_t j, double x) {
  return std::polar(1.0, 2 * std::numbers::pi * std::ldexp(1.0, static_cast<int>(j)) * x);
}

}  // namespace

TEST(OverlapClass, AgreesWithDenseSampling) {
  const auto& env = Envelope::standard();
  for (std::int64_t j = 1; j <= 5; ++j)
    for (std::int64_t M = 0; M <= 9; ++M)
      for (std::int64_t k = -2; k <= 4; ++k) {
        const auto& phi = SmoothProfile::standard_bump();
        EXPECT_EQ(overlap_class(M, k, j, phi, env), sampled_class(M, k, j, phi)) << M << ' ' << k << ' ' << j;
        EXPECT_EQ(overlap_class(M, k, j, wide_profile(), env), sampled_class(M, k, j, wide_profile()))
            << M << ' ' << k << ' ' << j;
      }
}

TEST(OverlapClass, FlatExactlyOnDiagonal) {
  const auto& phi = SmoothProfile::standard_bump();
  const auto& env = Envelope::standard();
  EXPECT_EQ(overlap_class(7, 3, 4, phi, env), OverlapClass::Flat);
  EXPECT_EQ(overlap_class(7, 3, 3, phi, env), OverlapClass::Disjoint);
  EXPECT_EQ(overlap_class(7, 3, 5, phi, env), OverlapClass::Disjoint);
  EXPECT_EQ(overlap_class(1, 0, 1, wide_profile(), env), OverlapClass::Partial);
}

TEST(ApplyDilated, PartialOverlapThrowsWithContext) {
  const BumpSumMultiplier m({{1, 1.0}}, wide_profile());
  const ModulatedFunction f({{1, 1.0}});
  try {
    apply_dilated(m, 0, f);
    FAIL() << "expected PartialOverlap";
  } catch (const PartialOverlap& e) {
    EXPECT_EQ(e.scale(), 1);
    EXPECT_EQ(e.dilation(), 0);
    EXPECT_EQ(e.freq(), 1);
  }
}

TEST(ApplyDilated, SelectsFlatTermCoefficients) {
  // Terms at scales 2..5 with coefficients 1, -1, i, -i act on the j = 1
  // modulation exactly when M - k = 1.
  const std::complex<double> I(0, 1);
  const BumpSumMultiplier m({{2, 1.0}, {3, -1.0}, {4, I}, {5, -I}});
  const ModulatedFunction f({{1, 1.0}});
  const std::complex<double> expect[] = {1.0, -1.0, I, -I};
  for (int k = 1; k <= 4; ++k) {
    const auto out = apply_dilated(m, k, f);
    ASSERT_EQ(out.terms().size(), 1u);
    EXPECT_EQ(out.terms()[0].coeff, expect[k - 1]);
  }
  EXPECT_TRUE(apply_dilated(m, 0, f).terms().empty());
  EXPECT_TRUE(apply_dilated(m, 5, f).terms().empty());
}

TEST(ApplyDilated, UnitMultiplierOnItsOctaveIsIdentity) {
  const BumpSumMultiplier m({{3, 1.0}});
  const ModulatedFunction f({{2, 0.5}});
  const auto out = apply_dilated(m, 1, f);
  for (double x : {-3.0, 0.0, 0.7, 11.0}) EXPECT_EQ(pointwise_eval(out, x), pointwise_eval(f, x));
}

TEST(ApplyDilated, EmptyMultiplierGivesZero) {
  const ModulatedFunction f({{1, 1.0}, {3, 2.0}});
  EXPECT_TRUE(apply_dilated(BumpSumMultiplier{}, 4, f).terms().empty());
  EXPECT_EQ(pointwise_eval(apply_dilated(BumpSumMultiplier{}, 4, f), 0.2), std::complex<double>{});
}

TEST(Envelope, TableMatchesDirectQuadrature) {
  const auto& env = Envelope::standard();
  for (double x : {0.0, 0.5, 1.3, 7.25, 20.0, 63.7, 200.1}) EXPECT_NEAR(env(x), oracle::envelope_at(x), 1e-10) << x;
  EXPECT_NEAR(env(-4.4), env(4.4), 1e-13);
}

TEST(Envelope, NormsMatchTransformSide) {
  const auto& env = Envelope::standard();
  const auto& hat = SmoothProfile::envelope_hat();
  const double l2 = std::sqrt(2 * oracle::simpson([&](double r) { return hat(r) * hat(r); }, 0, 0.125));
  EXPECT_NEAR(env.lp_norm(2), l2, 1e-9);
  EXPECT_NEAR(env.lp_norm(INFINITY), oracle::envelope_at(0.0), 1e-10);
  EXPECT_NEAR(env.normalized(4).lp_norm(4), 1.0, 1e-12);
  EXPECT_NEAR(env.with_scale(3.0)(0.0), 3 * env(0.0), 1e-15);
}

TEST(Envelope, NegligibleAtWindowEdge) {
  const auto& env = Envelope::standard();
  for (double x = 1000; x <= 1024; x += 0.37) EXPECT_LT(std::abs(env(x)), 1e-12) << x;
  EXPECT_THROW(env(1025.0), OutOfWindow);
  EXPECT_DOUBLE_EQ(env.support_radius().to_double(), 0.125);
}

TEST(PointwiseEval, MatchesDefinition) {
  const ModulatedFunction f({{1, 1.0}, {3, {0, 2}}});
  const auto& env = Envelope::standard();
  for (double x : {0.0, 0.3, -5.1}) {
    const auto expect = (wave(1, x) + std::complex<double>(0, 2) * wave(3, x)) * env(x);
    EXPECT_NEAR(std::abs(pointwise_eval(f, x) - expect), 0.0, 1e-14);
  }
  // Dilated with the L^p-preserving factor.
  const ModulatedFunction h({{2, 1.0}}, env, 3, 0.5, 2.0);
  const double x = 0.1;
  const auto expect = 0.5 * std::sqrt(8.0) * wave(2, 8 * x) * env(8 * x);
  EXPECT_NEAR(std::abs(pointwise_eval(h, x) - expect), 0.0, 1e-13);
}

TEST(ModulatedFunction, Validation) {
  EXPECT_THROW(ModulatedFunction({{0, 1.0}}), InvalidArgument);
  EXPECT_THROW(ModulatedFunction({{2, 1.0}, {2, 1.0}}), InvalidArgument);
  EXPECT_THROW(ModulatedFunction({{1, 1.0}}, Envelope::standard(), 0, 1.0, 0.5), InvalidArgument);
}

TEST(LpNorm, ChangeOfVariables) {
  const auto& env = Envelope::standard();
  const double psi3 = env.lp_norm(3);
  // |f| = |Psi| for a single modulation.
  EXPECT_NEAR(lp_norm(ModulatedFunction({{2, 1.0}}), 3), psi3, 1e-9);
  // Plain dilation by 2^e shrinks the L^p norm by 2^(-e/p); the norm index
  // compensates exactly, even for exponents far beyond the double range.
  EXPECT_NEAR(lp_norm(ModulatedFunction({{2, 1.0}}, env, 6, 1.0), 3), psi3 * std::exp2(-2.0), 1e-9);
  EXPECT_NEAR(lp_norm(ModulatedFunction({{2, 1.0}}, env, 1'000'000, 2.5, 3.0), 3), 2.5 * psi3, 1e-8);
}

TEST(LpNorm, OrthogonalModulationsAddInL2) {
  const auto& env = Envelope::standard();
  const ModulatedFunction f({{1, 1.0}, {2, -1.0}, {4, {0, 1}}});
  EXPECT_NEAR(lp_norm(f, 2), std::sqrt(3.0) * env.lp_norm(2), 1e-9);
}

TEST(Maximal, SingleDilationIsModulus) {
  const auto m = BumpSumMultiplier({{2, 1.0}, {4, -2.0}});
  const ModulatedFunction f({{1, 1.0}, {3, 1.0}});
  const std::vector<std::int64_t> ks = {1};
  const std::vector<double> pts = {0.0, 0.25, 3.0};
  const auto sup = maximal_pointwise(m, ks, f, pts);
  const auto out = apply_dilated(m, 1, f);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(sup[i], std::abs(pointwise_eval(out, pts[i])), 1e-15);
  EXPECT_NEAR(maximal_lp_norm(m, ks, f, 2), lp_norm(out, 2), 1e-9);
}

TEST(Maximal, SupOverDilations) {
  const auto m = BumpSumMultiplier({{2, 1.0}, {4, -2.0}});
  const ModulatedFunction f({{1, 1.0}, {3, 1.0}});
  const std::vector<std::int64_t> ks = {-1, 0, 1, 2, 3};
  const std::vector<double> pts = {0.0, 0.6, -2.2};
  const auto sup = maximal_pointwise(m, ks, f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = 0.0;
    for (auto k : ks) best = std::max(best, std::abs(pointwise_eval(apply_dilated(m, k, f), pts[i])));
    EXPECT_DOUBLE_EQ(sup[i], best);
  }
  EXPECT_THROW(maximal_pointwise(m, std::vector<std::int64_t>{}, f, pts), EmptyDilationSet);
}

TEST(BumpSumMultiplier, MergesAndEvaluates) {
  const BumpSumMultiplier m({{3, 1.0}, {1, 2.0}, {3, 0.5}});
  ASSERT_EQ(m.terms().size(), 2u);
  EXPECT_EQ(m.terms()[0].scale, 1);
  EXPECT_EQ(m.terms()[1].coeff, std::complex<double>(1.5));
  EXPECT_EQ(m(8.0), std::complex<double>(1.5));
  EXPECT_EQ(m(2.0), std::complex<double>(2.0));
  EXPECT_EQ(m.dilated(1, 1.0), std::complex<double>(2.0));
  // Exact far beyond double range.
  const BumpSumMultiplier far({{5000, 1.0}});
  EXPECT_EQ(far.dilated(5000, 1.0), std::complex<double>(1.0));
  EXPECT_EQ(far.dilated(4999, 1.0), std::complex<double>(0.0));
}
