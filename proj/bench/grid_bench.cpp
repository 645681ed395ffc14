// Serial reference against the OpenMP fill for the two grid kinds that
// dominate run time. With one core the parallel rows show scheduling overhead.
#include <benchmark/benchmark.h>

#include "edgetrans/kernels.hpp"

namespace {

using namespace edgetrans;

std::vector<double> axis(int count, double lo, double hi) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

void BM_MeijerGrid(benchmark::State& state) {
  const auto sched = state.range(0) ? Schedule::parallel : Schedule::serial;
  const auto xs = axis(8, 0.3, 3.0);
  const LimitKernelSpec s{2, 0.0, LimitKind::meijer};
  for (auto _ : state) benchmark::DoNotOptimize(meijer_grid(s, xs, xs, sched));
}
BENCHMARK(BM_MeijerGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_FiniteGrid(benchmark::State& state) {
  const auto sched = state.range(0) ? Schedule::parallel : Schedule::serial;
  const Potential P{2, 0.0, {0.0, 1.0}, 1.0};
  const int n = 24, bits = default_precision_bits(n);
  const auto T = moments_quadratic(P, n, required_moment_index(2, n), bits);
  const auto F = biorth_solve(T);
  const auto xs = axis(16, 0.05, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(finite_grid(F, T, xs, xs, sched));
}
BENCHMARK(BM_FiniteGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
