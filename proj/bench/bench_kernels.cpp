// SPDX-License-Identifier: MIT
//
// Serial reference vs OpenMP kernels on the two heaviest grid sweeps.
#include "gls/fenchel.hpp"
#include "gls/tail_curve.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace gls;

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
    return out;
}

void BM_TailEnvelope(benchmark::State& state, Execution exec) {
    const Model m = OuterModel{1.0, 1.0, 2};
    const auto g = natural_function(m);
    const auto ts = log_grid(1e-6, 1e6, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tail_envelope(g, 1.0, ts, {}, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SteinMoments(benchmark::State& state, Execution exec) {
    const TailCurve tail = model_tail(OuterModel{1.0, 1.0, 2}, LevelSet::exact);
    std::vector<double> ps;
    for (int i = 0; i < state.range(0); ++i) ps.push_back(2.05 + 0.25 * i);
    for (auto _ : state) benchmark::DoNotOptimize(stein_moments(tail, ps, 1e-10, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_TailEnvelope, serial, Execution::serial)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TailEnvelope, parallel, Execution::parallel)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SteinMoments, serial, Execution::serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SteinMoments, parallel, Execution::parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
