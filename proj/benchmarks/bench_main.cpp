#include <benchmark/benchmark.h>

#include "modlab/approx.hpp"
#include "modlab/extremals.hpp"
#include "modlab/kernels.hpp"
#include "modlab/moduli.hpp"
#include "modlab/quadrature.hpp"

namespace {

using namespace modlab;

void BM_WeightedNorm(benchmark::State& state) {
  const auto f = catalog_get("inverse_power").descriptor;
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_norm(f, {0.0, 0.5}, NormOrder(2.0)));
  }
}
BENCHMARK(BM_WeightedNorm);

void BM_DtModulus(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto f = catalog_get("truncated_power", {{"k", k}, {"delta", 1.0 / 32}}).descriptor;
  ModulusRequest req;
  req.k = k;
  req.delta = 1.0 / 32;
  req.q = NormOrder(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dt_modulus(f, req).total);
}
BENCHMARK(BM_DtModulus)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BestApprox(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double q = static_cast<double>(state.range(1));
  const auto f = catalog_get("truncated_power_origin", {{"k", 2}}).descriptor;
  const NormOrder order = q > 0 ? NormOrder(q) : NormOrder::infinity();
  for (auto _ : state) benchmark::DoNotOptimize(best_approx(f, n, {}, order).error);
}
// Second argument: q, with 0 standing for inf.
BENCHMARK(BM_BestApprox)
    ->Args({16, 2})
    ->Args({16, 0})
    ->Args({16, 1})
    ->Args({32, 3})
    ->Unit(benchmark::kMillisecond);

void BM_KernelSupRatio(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel_sup_ratio(3, 0.5, 1.0 / 512).ratio);
}
BENCHMARK(BM_KernelSupRatio);

}  // namespace

BENCHMARK_MAIN();
