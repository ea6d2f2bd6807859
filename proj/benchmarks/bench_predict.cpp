#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "panogaze/analytics.hpp"
#include "panogaze/forecast.hpp"
#include "panogaze/pa.hpp"
#include "panogaze/trace.hpp"

using namespace panogaze;

static void BM_PolyregPredict(benchmark::State& state) {
    const data::Trace tr = data::synthesize_trace({6, 2.0, 120.0, 0, 0.0});
    std::vector<geo::NormalizedPoint> head;
    for (const auto& s : tr.samples) head.push_back(s.head);
    const std::span<const geo::NormalizedPoint> window(head.data(), 120);
    for (auto _ : state)
        benchmark::DoNotOptimize(predict::polyreg_predict(window, 1.0 / 120.0, 1.0,
                                                          static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PolyregPredict)->Arg(1)->Arg(2)->Arg(3);

static void BM_ArForecast(benchmark::State& state) {
    const data::Trace tr = data::synthesize_trace({7, 2.0, 120.0, 0, 0.0});
    std::vector<geo::NormalizedPoint> gaze;
    for (const auto& s : tr.samples) gaze.push_back(s.gaze);
    const std::span<const geo::NormalizedPoint> window(gaze.data(), 120);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            predict::ar_forecast(window, 106, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ArForecast)->Arg(2)->Arg(4)->Arg(8);

static void BM_PaUpdate(benchmark::State& state) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    predict::PAModel m = predict::PAModel::head_passthrough(3);
    std::vector<double> f{1.0, 0.0, 0.0};
    for (auto _ : state) {
        f[1] = d(rng);
        f[2] = d(rng);
        m = predict::pa_update(m, f, d(rng));
        benchmark::DoNotOptimize(m.weights.data());
    }
}
BENCHMARK(BM_PaUpdate);

static void BM_LagSweep(benchmark::State& state) {
    const data::Trace tr = data::synthesize_trace({9, 20.0, 120.0, 14, 0.005});
    for (auto _ : state)
        benchmark::DoNotOptimize(analytics::lag_mse_sweep(tr, static_cast<int>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(tr.samples.size()) *
                            state.range(0));
}
BENCHMARK(BM_LagSweep)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
