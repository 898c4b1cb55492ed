#include <gtest/gtest.h>

#include <cmath>

#include "dilmax/counterexample.hpp"
#include "dilmax/decomposition.hpp"
#include "dilmax/grid.hpp"
#include "dilmax/serialization.hpp"
#include "oracles.hpp"

using namespace dilmax;

TEST(CrossModule, SymbolicAndGridApplicationAgree) {
  for (int N = 1; N <= 3; ++N) {
    const auto ks = counterexample::dilation_range(N);
    EXPECT_LE(oracle::bump_vs_grid(N, ks), 1e-6) << N;
  }
}

TEST(CrossModule, DilatedEnvelopeOnGrid) {
  // A modulated function with a symbolic dilation exponent sampled on a grid
  // has the L^p norm the scaling identity predicts.
  const auto env = bump::Envelope::standard();
  const bump::ModulatedFunction f({{1, 1.0}}, env, 2, 1.0, 3.0);
  const grid::GridSpec s(1, 1 << 15, 256.0);
  const auto g = oracle::sample(s, f);
  EXPECT_NEAR(grid::lp_norm(g, 3), bump::lp_norm(f, 3), 1e-8);
}

TEST(CrossModule, GridMaximalMatchesSymbolicMaximal) {
  const int N = 2;
  const auto m = counterexample::build_mN(N);
  const auto gN = counterexample::build_gN(N);
  // Same lattice as the symbolic quadrature (256 points per unit).
  const grid::GridSpec s(1, 512 * 256, 512.0);
  const auto f = oracle::sample(s, gN);
  const auto ks = counterexample::dilation_range(N);
  const auto sym = grid::GridSymbol::lazy(s, grid::make_symbol(m));
  const double on_grid = grid::lp_norm(grid::maximal_dyadic(sym, ks, f), 2);
  EXPECT_NEAR(on_grid, bump::maximal_lp_norm(m, ks, gN, 2), 1e-6 * on_grid);
}

TEST(CrossModule, SerializedMultiplierDrivesSameGrid) {
  const auto m = counterexample::build_mN(2);
  const auto back = io::multiplier_from_json(io::to_json(m));
  const grid::GridSpec s(1, 1024, 64.0);
  for (std::size_t i = 0; i < s.n; ++i) EXPECT_EQ(m.dilated(3, s.frequency(i)), back.dilated(3, s.frequency(i)));
}

TEST(CrossModule, CriterionOnCounterexampleGrowsWithHorizon) {
  const counterexample::CounterexampleSpec spec(2, counterexample::GrowthWeight::sqrt_log(2));
  const auto& m = spec.assembled();
  const grid::GridSpec s(1, 4096, 1024.0);
  const auto sym = grid::GridSymbol::lazy(s, grid::make_symbol(m));
  auto ks = counterexample::realized_octaves(m);
  const auto report = decomposition::evaluate_criteria(sym, ks, {});
  EXPECT_FALSE(report.alias_warning);
  const auto trend = decomposition::horizon_trend(report, {8, 16, 32});
  EXPECT_EQ(trend.verdict, decomposition::Verdict::Violated);
}
