#include <benchmark/benchmark.h>

#include "sil/dirpoly.hpp"

namespace {

sil::DirPoly moebius_poly(sil::u64 X) {
  const auto vals = sil::range_values(sil::builtin_fn("moebius"), X + 1, X);
  return sil::from_window(vals, X + 1);
}

// phasor-recurrence grid against pointwise evaluation at the same points
void bm_evaluate_grid(benchmark::State& st) {
  const auto P = moebius_poly(static_cast<sil::u64>(st.range(0)));
  const double dt = sil::nyquist_step(P);
  const std::size_t n = 2048;
  for (auto _ : st) benchmark::DoNotOptimize(sil::evaluate_grid(P, 0.5, 0.0, dt, n));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n) * st.range(0));
}
BENCHMARK(bm_evaluate_grid)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void bm_evaluate_pointwise(benchmark::State& st) {
  const auto P = moebius_poly(static_cast<sil::u64>(st.range(0)));
  const double dt = sil::nyquist_step(P);
  const std::size_t n = 2048;
  for (auto _ : st)
    for (std::size_t k = 0; k < n; ++k) benchmark::DoNotOptimize(sil::evaluate(P, 0.5, double(k) * dt));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n) * st.range(0));
}
BENCHMARK(bm_evaluate_pointwise)->Arg(10'000)->Unit(benchmark::kMillisecond);

void bm_mean_square(benchmark::State& st) {
  const auto P = moebius_poly(10'000);
  const double T = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sil::mean_square_grid(P, 0.5, T, sil::nyquist_step(P)));
}
BENCHMARK(bm_mean_square)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
