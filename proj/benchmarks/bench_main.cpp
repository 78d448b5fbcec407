#include <benchmark/benchmark.h>

#include "unitfrac/arith.hpp"
#include "unitfrac/egyptian.hpp"
#include "unitfrac/entropy.hpp"
#include "unitfrac/extremal.hpp"
#include "unitfrac/fourier.hpp"
#include "unitfrac/sampling_plan.hpp"
#include "unitfrac/sieve.hpp"
#include "unitfrac/subset_solver.hpp"

using namespace unitfrac;

static void BM_CountInterval(benchmark::State& state) {
  const UnitSet ground = UnitSet::range(1, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_subsets(ground, 1));
}
BENCHMARK(BM_CountInterval)->Arg(20)->Arg(30)->Arg(40)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_CountAtMost(benchmark::State& state) {
  const UnitSet ground = UnitSet::range(1, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_subsets_at_most(ground, 1));
}
BENCHMARK(BM_CountAtMost)->Arg(24)->Arg(30)->Arg(36)->Unit(benchmark::kMillisecond);

static void BM_FindUnprunable(benchmark::State& state) {
  // Smooth elements survive pruning, so this times the raw meet-in-the-middle.
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = 2; v.size() < static_cast<std::size_t>(state.range(0)); ++n)
    if (is_smooth(n, 16)) v.push_back(n);
  const UnitSet ground(v);
  for (auto _ : state) benchmark::DoNotOptimize(find_subset(ground, BigRational(BigInt(7), BigInt(5))));
}
BENCHMARK(BM_FindUnprunable)->Arg(24)->Arg(32)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_LambdaN(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lambda_N(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_LambdaN)->Arg(18)->Arg(24)->Arg(28)->Unit(benchmark::kMillisecond);

static void BM_TOfN(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_of_N(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_TOfN)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_SolveLambdaStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_lambda_star(1e-10));
}
BENCHMARK(BM_SolveLambdaStar)->Unit(benchmark::kMillisecond);

static void BM_FourierIdentity(benchmark::State& state) {
  // Q = lcm of the support's prime powers; 7..16 gives 720720.
  const UnitSet support = UnitSet::range(7, static_cast<std::uint64_t>(state.range(0)));
  const auto plan = make_plan(support, std::vector<long double>(support.size(), 0.3L), BigInt(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_integrality_probability(plan));
  state.counters["Q"] = plan.modulus_Q.get_d();
}
BENCHMARK(BM_FourierIdentity)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_TaylorSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(taylor_fact_sweep(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_TaylorSweep)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Primes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Primes)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_Greedy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(greedy_expand(BigInt(5), BigInt(state.range(0))));
}
BENCHMARK(BM_Greedy)->Arg(121)->Arg(9973);

static void BM_Smooth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(smooth_expand(BigInt(5), BigInt(state.range(0))));
}
BENCHMARK(BM_Smooth)->Arg(121)->Arg(9973)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
