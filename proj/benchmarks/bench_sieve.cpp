#include <benchmark/benchmark.h>

#include "sil/sieve.hpp"

namespace {

void bm_brun_hooley_plan(benchmark::State& st) {
  const auto X = static_cast<sil::u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::brun_hooley_plan(X));
}
BENCHMARK(bm_brun_hooley_plan)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void bm_lambda_weights(benchmark::State& st) {
  const auto plan = sil::brun_hooley_plan(static_cast<sil::u64>(st.range(0)));
  const auto g = sil::builtin_fn("two_squares");
  for (auto _ : st) benchmark::DoNotOptimize(sil::lambda_weights(plan, g));
}
BENCHMARK(bm_lambda_weights)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void bm_majorant_violations(benchmark::State& st) {
  const auto plan = sil::brun_hooley_plan(1'000'000);
  const auto g = sil::builtin_fn("two_squares");
  const auto w = sil::lambda_weights(plan, g);
  const auto N = static_cast<sil::u64>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::majorant_violations(w, g, N));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(bm_majorant_violations)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
