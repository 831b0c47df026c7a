#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "gausslab/arith.hpp"
#include "gausslab/exact_sum.hpp"
#include "gausslab/large_sieve.hpp"
#include "gausslab/prime_sums.hpp"
#include "gausslab/roots.hpp"

using namespace gausslab;

namespace {

const FactorTable& shared_table() {
  static const FactorTable t(1'000'000);
  return t;
}

void BM_FactorTable(benchmark::State& state) {
  for (auto _ : state) {
    FactorTable t(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(t.primes().size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FactorTable)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

// Miller-Rabin on odd numbers near 2^k
void BM_IsPrime(benchmark::State& state) {
  std::uint64_t n = (std::uint64_t{1} << state.range(0)) + 1;
  std::uint64_t hits = 0;
  for (auto _ : state) {
    hits += is_prime(n);
    n += 2;
  }
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_IsPrime)->Arg(20)->Arg(40)->Arg(62);

void BM_SumG(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const FactorTable table(prime_sum_table_limit(x));
  for (auto _ : state) benchmark::DoNotOptimize(sum_G(x, 1, table, Parallelism{1}).sum);
}
BENCHMARK(BM_SumG)->Arg(1'000'000)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void BM_RootsMod(benchmark::State& state) {
  const auto& table = shared_table();
  std::uint64_t d = 1, total = 0;
  const auto top = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    total += roots_mod(d, table).rho();
    d = d + 2 > top ? 1 : d + 2;
  }
  benchmark::DoNotOptimize(total);
}
BENCHMARK(BM_RootsMod)->Arg(1000)->Arg(1'000'000);

void BM_ExactSum(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = dist(rng);
  for (auto _ : state) {
    ExactSum acc;
    for (double x : v) acc.add(x);
    benchmark::DoNotOptimize(acc.value());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactSum)->Arg(1 << 10)->Arg(1 << 16);

void BM_LargeSieveLhs(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  const FactorTable table(2 * X + 1);
  const auto alpha = ls_alpha(AlphaKind::random, 3, X, X, 11, table);
  for (auto _ : state) benchmark::DoNotOptimize(ls_lhs(3, X, alpha, table));
}
BENCHMARK(BM_LargeSieveLhs)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
