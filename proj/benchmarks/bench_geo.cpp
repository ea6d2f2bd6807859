#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "panogaze/frame.hpp"
#include "panogaze/geo.hpp"

using namespace panogaze;

static void BM_QuatToPoint(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<geo::Quaternion> quats(1024);
    for (auto& q : quats) {
        q = {n(rng), n(rng), n(rng), n(rng)};
        const double norm = geo::quaternion_norm(q);
        q = {q.qx / norm, q.qy / norm, q.qz / norm, q.qw / norm};
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto p = geo::unit_vector_to_point(geo::quat_to_unit_vector(quats[i++ & 1023]));
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_QuatToPoint);

static void BM_RoundTrip(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(0.05, 0.95);
    std::vector<geo::NormalizedPoint> points(1024);
    for (auto& p : points) p = {d(rng), d(rng)};
    std::size_t i = 0;
    for (auto _ : state) {
        const auto back = geo::unit_vector_to_point(geo::point_to_unit_vector(points[i++ & 1023]));
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(BM_RoundTrip);

static void BM_EquirectToCubeface(benchmark::State& state) {
    const int face = static_cast<int>(state.range(0));
    FrameGray frame(1024, 512);
    for (int j = 0; j < frame.height; ++j)
        for (int i = 0; i < frame.width; ++i) frame.at(i, j) = static_cast<float>((i * 7 + j) & 255);
    for (auto _ : state) {
        const FrameGray out = geo::equirect_to_cubeface(frame, geo::CubeFace::PosZ, face);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * face * face);
}
BENCHMARK(BM_EquirectToCubeface)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
