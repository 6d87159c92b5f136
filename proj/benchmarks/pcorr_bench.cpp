#include <benchmark/benchmark.h>

#include "pcorr/energy.hpp"
#include "pcorr/goldbach.hpp"
#include "pcorr/pair_correlation.hpp"
#include "pcorr/primes.hpp"
#include "pcorr/sequences.hpp"

namespace {

using namespace pcorr;

void BM_PairCorrelationFast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<std::uint64_t> primes = first_primes(n);
  const FixedReal alpha = FixedReal::sqrt2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_correlation_fast(std::span<const std::uint64_t>(primes), alpha, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairCorrelationFast)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_PairCorrelationNaive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<BigInt> primes = generate(SequenceSpec::primes(), n);
  const FixedReal alpha = FixedReal::sqrt2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_correlation_naive(primes, alpha, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairCorrelationNaive)->RangeMultiplier(2)->Range(1 << 8, 1 << 11)->Complexity();

void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(limit).count());
}
BENCHMARK(BM_Sieve)->RangeMultiplier(10)->Range(100'000, 100'000'000)->Unit(benchmark::kMillisecond);

void BM_AdditiveEnergy(benchmark::State& state) {
  const std::vector<BigInt> primes =
      generate(SequenceSpec::primes(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(additive_energy(primes).E);
}
BENCHMARK(BM_AdditiveEnergy)->RangeMultiplier(4)->Range(500, 8000)->Unit(benchmark::kMillisecond);

void BM_GoldbachProfile(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(goldbach_profile(X, X / 10).prime_count);
}
BENCHMARK(BM_GoldbachProfile)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
