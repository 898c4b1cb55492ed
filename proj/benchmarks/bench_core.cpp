#include <benchmark/benchmark.h>

#include <random>

#include "dilmax/counterexample.hpp"
#include "dilmax/decomposition.hpp"
#include "dilmax/fft.hpp"
#include "dilmax/grid.hpp"
#include "dilmax/tiling.hpp"

using namespace dilmax;

static void BM_Fft1d(benchmark::State& state) {
  std::vector<fft::cplx> v(static_cast<std::size_t>(state.range(0)), {1.0, 0.5});
  for (auto _ : state) {
    fft::transform_1d(v, fft::Direction::Forward);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fft1d)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void BM_ChirpSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<fft::cplx> v(n, {1.0, -1.0});
  for (auto _ : state) benchmark::DoNotOptimize(fft::affine_fourier_sum(v, -1.0, 0.01, 0.3, 0.001, n));
}
BENCHMARK(BM_ChirpSum)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

static void BM_LowerBound(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(counterexample::verify_lower_bound(N, 2.0));
}
BENCHMARK(BM_LowerBound)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_GridMaximal(benchmark::State& state) {
  const grid::GridSpec s(1, static_cast<std::size_t>(state.range(0)), 512.0);
  const auto m = counterexample::build_mN(2);
  const auto sym = grid::GridSymbol::lazy(s, grid::make_symbol(m));
  const auto f = grid::GridFunction::sample(
      s, [](const grid::Point& x) { return std::exp(-x[0] * x[0] / 8) * std::polar(1.0, 4.0 * x[0]); });
  const auto ks = counterexample::dilation_range(2);
  for (auto _ : state) benchmark::DoNotOptimize(grid::maximal_dyadic(sym, ks, f));
}
BENCHMARK(BM_GridMaximal)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

static void BM_Tiling(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<std::int64_t> E;
  for (int i = 0; i < (1 << N); ++i) E.push_back(static_cast<std::int64_t>(rng() % (std::uint64_t{1} << (2 * N + 2))));
  const tiling::TilingInstance in(E, N, 32);
  for (auto _ : state) {
    auto r = tiling::build_tiling(in);
    tiling::certify(r, in.E);
    benchmark::DoNotOptimize(r.centers.data());
  }
}
BENCHMARK(BM_Tiling)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_CriterionKernelLp(benchmark::State& state) {
  const grid::GridSpec s(1, 4096, 1024.0);
  const auto sym = grid::GridSymbol::lazy(s, grid::make_symbol(bump::BumpSumMultiplier({{0, 1.0}})));
  std::vector<std::int64_t> ks;
  for (int k = -8; k <= 8; ++k) ks.push_back(k);
  for (auto _ : state) benchmark::DoNotOptimize(decomposition::evaluate_criteria(sym, ks, {}));
}
BENCHMARK(BM_CriterionKernelLp)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
