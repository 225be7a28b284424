#include <benchmark/benchmark.h>

#include "sil/arith.hpp"

namespace {

void bm_sieve_primes(benchmark::State& st) {
  const auto limit = static_cast<sil::u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::sieve_primes(limit));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(bm_sieve_primes)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void bm_factor_window(benchmark::State& st) {
  const auto len = static_cast<sil::u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::factor_window(1'000'000'000, len));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(bm_factor_window)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void bm_range_values_moebius(benchmark::State& st) {
  const auto f = sil::builtin_fn("moebius");
  const auto len = static_cast<sil::u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::range_values_int(f, 10'000'001, len));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(bm_range_values_moebius)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
