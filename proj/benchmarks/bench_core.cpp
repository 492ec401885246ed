#include <benchmark/benchmark.h>

#include "warpcurv/ambient.hpp"
#include "warpcurv/curvature.hpp"
#include "warpcurv/extremal.hpp"

using namespace warpcurv;

namespace {

Vec clifford_point(int n) {
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = 0.7 + 0.1 * i;
    return p;
}

void BM_MetricJet(benchmark::State& state) {
    AmbientSpace amb = make_clifford(2, 2);
    const Vec p = clifford_point(4);
    for (auto _ : state) benchmark::DoNotOptimize(amb.metric.jet(p));
}
BENCHMARK(BM_MetricJet);

void BM_CurvatureTensor(benchmark::State& state) {
    AmbientSpace amb = make_clifford(2, 2);
    const Vec p = clifford_point(4);
    for (auto _ : state) benchmark::DoNotOptimize(curvature_at(amb.metric, p));
}
BENCHMARK(BM_CurvatureTensor);

void BM_ExtremalSearch(benchmark::State& state) {
    AmbientSpace amb = make_clifford(2, 2);
    const Vec p = clifford_point(4);
    CurvatureAtPoint cp = curvature_at(amb.metric, p);
    Mat sub(4, 3);
    sub << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1;
    for (auto _ : state) benchmark::DoNotOptimize(extremal_numeric(cp, sub));
}
BENCHMARK(BM_ExtremalSearch);

void BM_CliffordExtrinsic(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(clifford_extrinsic(2, 2, /*samples=*/1));
}
BENCHMARK(BM_CliffordExtrinsic);

}  // namespace

BENCHMARK_MAIN();
