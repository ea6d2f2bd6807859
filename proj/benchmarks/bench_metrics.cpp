#include <benchmark/benchmark.h>

#include <random>

#include "panogaze/motion.hpp"
#include "panogaze/quality.hpp"

using namespace panogaze;

namespace {

FrameGray random_frame(int w, int h, std::uint64_t seed) {
    FrameGray f(w, h);
    std::mt19937_64 rng(seed);
    for (float& v : f.values) v = static_cast<float>(rng() & 255);
    return f;
}

} // namespace

static void BM_Wmse(benchmark::State& state) {
    const int h = static_cast<int>(state.range(0));
    const FrameGray a = random_frame(2 * h, h, 3);
    const FrameGray b = random_frame(2 * h, h, 4);
    for (auto _ : state) benchmark::DoNotOptimize(taxonomy::wmse(a, b));
    state.SetItemsProcessed(state.iterations() * 2 * h * h);
}
BENCHMARK(BM_Wmse)->Arg(256)->Arg(512)->Arg(1024);

static void BM_FaceMotion(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const FrameGray a = random_frame(s, s, 5);
    FrameGray b(s, s);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) b.at((i + 3) % s, j) = a.at(i, j);
    for (auto _ : state) benchmark::DoNotOptimize(taxonomy::estimate_face_motion(a, b));
}
BENCHMARK(BM_FaceMotion)->Arg(64)->Arg(100)->Arg(128);

BENCHMARK_MAIN();
