#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "panogaze/benchmark.hpp"
#include "panogaze/forecast.hpp"
#include "panogaze/pa.hpp"
#include "panogaze/tiles.hpp"

using namespace panogaze;
using namespace panogaze::predict;

TEST_CASE("tile_of floors into the grid and clamps the bottom edge") {
    const TileGrid g{8, 8};
    CHECK(tile_of({0.0, 0.0}, g) == TileIndex{0, 0});
    CHECK(tile_of({0.49, 0.49}, g) == TileIndex{3, 3});
    CHECK(tile_of({0.51, 0.51}, g) == TileIndex{4, 4});
    CHECK(tile_of({0.3, 1.0}, g) == TileIndex{7, 2});

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const NormalizedPoint p{std::min(d(rng), 0.999999), d(rng)};
        const TileIndex t = tile_of(p, g);
        CHECK(t.row >= 0);
        CHECK(t.row < g.rows);
        CHECK(t.col >= 0);
        CHECK(t.col < g.cols);
    }
}

TEST_CASE("unified_euclidean is the cylinder metric") {
    CHECK(unified_euclidean({0.3, 0.3}, {0.3, 0.3}) == 0.0);
    CHECK(unified_euclidean({0.99, 0.5}, {0.01, 0.5}) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(unified_euclidean({0.0, 0.0}, {0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const NormalizedPoint a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
        const double ab = unified_euclidean(a, b);
        const double ba = unified_euclidean(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(unified_euclidean(a, a) == 0.0);
        CHECK(ab <= unified_euclidean(a, c) + unified_euclidean(c, b) + 1e-12);
    }
}

TEST_CASE("manhattan_tile_distance wraps columns unless asked not to") {
    const TileGrid g{8, 8};
    CHECK(manhattan_tile_distance({0.1, 0.1}, {0.1, 0.1}, g) == 0);
    CHECK(manhattan_tile_distance({0.49, 0.49}, {0.51, 0.51}, g) == 2);
    CHECK(manhattan_tile_distance({0.01, 0.5}, {0.99, 0.5}, g) == 1);
    CHECK(manhattan_tile_distance({0.01, 0.5}, {0.99, 0.5}, g, /*wrap_columns=*/false) == 7);

    SUBCASE("exhaustive tile pairs match the enumeration oracle") {
        for (int r1 = 0; r1 < 8; ++r1)
            for (int c1 = 0; c1 < 8; ++c1)
                for (int r2 = 0; r2 < 8; ++r2)
                    for (int c2 = 0; c2 < 8; ++c2) {
                        const NormalizedPoint a{(c1 + 0.5) / 8.0, (r1 + 0.5) / 8.0};
                        const NormalizedPoint b{(c2 + 0.5) / 8.0, (r2 + 0.5) / 8.0};
                        int best_col = INT_MAX;
                        for (int k = -1; k <= 1; ++k)
                            best_col = std::min(best_col, std::abs(c1 - c2 + k * 8));
                        const int expected = std::abs(r1 - r2) + best_col;
                        CHECK(manhattan_tile_distance(a, b, g) == expected);
                    }
    }
}

TEST_CASE("evaluate pools the three metrics") {
    const TileGrid g{8, 8};
    SUBCASE("perfect predictions") {
        std::vector<PredictionRecord> recs(5);
        for (std::size_t i = 0; i < recs.size(); ++i) {
            recs[i].predicted = recs[i].truth = {0.1 * (1.0 + static_cast<double>(i)), 0.5};
        }
        const MetricReport r = evaluate(recs, g);
        CHECK(r.mean_euclidean == 0.0);
        CHECK(r.mean_manhattan == 0.0);
        CHECK(r.tile_accuracy == 1.0);
        CHECK(r.count == 5);
    }
    SUBCASE("a seam crossing stays small") {
        std::vector<PredictionRecord> recs(1);
        recs[0].predicted = {0.99, 0.5};
        recs[0].truth = {0.01, 0.5};
        const MetricReport r = evaluate(recs, g);
        CHECK(r.mean_euclidean == doctest::Approx(0.02).epsilon(1e-12));
    }
    SUBCASE("matches a brute-force recomputation") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> d(0.0, 1.0);
        std::vector<PredictionRecord> recs(400);
        for (auto& r : recs) {
            r.predicted = {d(rng), d(rng)};
            r.truth = {d(rng), d(rng)};
        }
        const MetricReport r = evaluate(recs, g);
        double eu = 0.0, man = 0.0, acc = 0.0;
        for (const auto& rec : recs) {
            eu += unified_euclidean(rec.predicted, rec.truth);
            man += manhattan_tile_distance(rec.predicted, rec.truth, g);
            acc += tile_of(rec.predicted, g) == tile_of(rec.truth, g) ? 1.0 : 0.0;
        }
        const auto n = static_cast<double>(recs.size());
        CHECK(std::abs(r.mean_euclidean - eu / n) <= 1e-12 * std::max(1.0, eu / n));
        CHECK(std::abs(r.mean_manhattan - man / n) <= 1e-12 * std::max(1.0, man / n));
        CHECK(r.tile_accuracy == doctest::Approx(acc / n).epsilon(1e-12));
    }
    CHECK_THROWS_AS(evaluate(std::vector<PredictionRecord>{}, g), std::invalid_argument);
}

TEST_CASE("polyreg_predict extrapolates per axis on unwrapped coordinates") {
    SUBCASE("constant history stays put") {
        const std::vector<NormalizedPoint> hist(10, NormalizedPoint{0.31, 0.62});
        const NormalizedPoint p = polyreg_predict(hist, 1.0 / 120.0, 1.0, 1);
        CHECK(p.x == doctest::Approx(0.31).epsilon(1e-9));
        CHECK(p.y == doctest::Approx(0.62).epsilon(1e-9));
    }
    SUBCASE("a linear ramp extrapolates exactly") {
        std::vector<NormalizedPoint> hist;
        for (int i = 0; i < 20; ++i) hist.push_back({0.1 * i * 0.05, 0.3 + 0.01 * i});
        const double dt = 0.05;
        const NormalizedPoint p = polyreg_predict(hist, dt, dt, 1);
        CHECK(p.x == doctest::Approx(0.1 * 20 * 0.05).epsilon(1e-9));
        CHECK(p.y == doctest::Approx(0.3 + 0.01 * 20).epsilon(1e-9));
    }
    SUBCASE("seam-crossing history keeps moving forward") {
        const std::vector<NormalizedPoint> hist = {
            {0.98, 0.5}, {0.99, 0.5}, {0.00, 0.5}, {0.01, 0.5}};
        const NormalizedPoint p = polyreg_predict(hist, 1.0, 1.0, 1);
        CHECK(p.x == doctest::Approx(0.02).epsilon(1e-9));
    }
    SUBCASE("short history is rejected") {
        const std::vector<NormalizedPoint> hist(2, NormalizedPoint{0.5, 0.5});
        CHECK_THROWS_AS(polyreg_predict(hist, 1.0, 1.0, 2), std::invalid_argument);
    }
}

TEST_CASE("ar_forecast learns low-order linear dynamics") {
    SUBCASE("constant series forecast constant") {
        const std::vector<NormalizedPoint> hist(30, NormalizedPoint{0.4, 0.7});
        const ArForecast f = ar_forecast(hist, 10, 3);
        CHECK(f.point.x == doctest::Approx(0.4).epsilon(1e-9));
        CHECK(f.point.y == doctest::Approx(0.7).epsilon(1e-9));
    }
    SUBCASE("AR(2) reproduces a sinusoid") {
        std::vector<NormalizedPoint> hist;
        const double w = 2.0 * std::numbers::pi / 40.0;
        for (int i = 0; i < 120; ++i) {
            const double v = 0.5 + 0.2 * std::sin(w * i);
            hist.push_back({v, v});
        }
        const ArForecast f = ar_forecast(hist, 1, 2);
        const double expected = 0.5 + 0.2 * std::sin(w * 120);
        CHECK(f.fell_back == false);
        CHECK(std::abs(f.point.x - expected) < 1e-6);
        CHECK(std::abs(f.point.y - expected) < 1e-6);
    }
    SUBCASE("a ramp continues, fitted or fallen back") {
        for (int order : {1, 2}) {
            std::vector<NormalizedPoint> hist;
            for (int i = 0; i < 40; ++i)
                hist.push_back({0.1 + 0.002 * i, 0.2 + 0.003 * i});
            const ArForecast f = ar_forecast(hist, 5, order);
            CHECK(std::abs(f.point.x - (0.1 + 0.002 * 44)) < 1e-9);
            CHECK(std::abs(f.point.y - (0.2 + 0.003 * 44)) < 1e-9);
        }
    }
    SUBCASE("short history falls back to the line and says so") {
        std::vector<NormalizedPoint> hist;
        for (int i = 0; i < 5; ++i) hist.push_back({0.1 + 0.01 * i, 0.5});
        const ArForecast f = ar_forecast(hist, 2, 4); // needs 12 samples for the fit
        CHECK(f.fell_back == true);
        CHECK(f.point.x == doctest::Approx(0.1 + 0.01 * 6).epsilon(1e-9));
    }
}

TEST_CASE("pa_update implements PA-I") {
    SUBCASE("predictions inside the epsilon tube leave weights untouched") {
        PAModel m = PAModel::zeros(2, 0.5, 1.0);
        const std::vector<double> f{1.0, 1.0};
        const PAModel out = pa_update(m, f, 0.4);
        CHECK(out.weights == m.weights);
    }
    SUBCASE("the hand-derived update") {
        PAModel m = PAModel::zeros(2, 0.1, 1.0);
        const std::vector<double> f{1.0, 1.0};
        const PAModel out = pa_update(m, f, 1.0);
        CHECK(out.weights[0] == doctest::Approx(0.45).epsilon(1e-12));
        CHECK(out.weights[1] == doctest::Approx(0.45).epsilon(1e-12));
    }
    SUBCASE("updates never increase the loss on the same sample") {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        PAModel m = PAModel::zeros(5, 0.005, 1.0);
        for (int i = 0; i < 10000; ++i) {
            std::vector<double> f(5);
            for (double& v : f) v = d(rng);
            const double target = d(rng);
            const double before =
                std::max(0.0, std::abs(pa_predict(m, f) - target) - m.epsilon);
            const PAModel after = pa_update(m, f, target);
            const double post =
                std::max(0.0, std::abs(pa_predict(after, f) - target) - after.epsilon);
            CHECK(post <= before + 1e-12);
            m = after;
        }
    }
    SUBCASE("epsilon = infinity makes every update a no-op") {
        PAModel m = PAModel::zeros(3, std::numeric_limits<double>::infinity(), 1.0);
        const std::vector<double> f{0.3, -0.7, 2.0};
        const PAModel out = pa_update(m, f, 123.0);
        CHECK(out.weights == m.weights);
    }
    SUBCASE("zero features with positive loss warn and change nothing") {
        PAModel m = PAModel::zeros(2, 0.0, 1.0);
        const std::vector<double> f{0.0, 0.0};
        bool skipped = false;
        const PAModel out = pa_update(m, f, 1.0, &skipped);
        CHECK(skipped);
        CHECK(out.weights == m.weights);
    }
}

TEST_CASE("fuse_predict blends gaze, head and objects") {
    const NormalizedPoint gaze{0.30, 0.40};
    const NormalizedPoint head{0.70, 0.60};

    SUBCASE("head pass-through") {
        PAModel mx = PAModel::zeros(3);
        PAModel my = PAModel::zeros(3);
        mx.weights = {0.0, 0.0, 1.0};
        my.weights = {0.0, 0.0, 1.0};
        const NormalizedPoint out = fuse_predict(mx, my, gaze, head, {});
        CHECK(out.x == head.x);
        CHECK(out.y == head.y);
    }
    SUBCASE("gaze pass-through") {
        PAModel mx = PAModel::zeros(3);
        PAModel my = PAModel::zeros(3);
        mx.weights = {0.0, 1.0, 0.0};
        my.weights = {0.0, 1.0, 0.0};
        const NormalizedPoint out = fuse_predict(mx, my, gaze, head, {});
        CHECK(out.x == doctest::Approx(gaze.x).epsilon(1e-12));
        CHECK(out.y == doctest::Approx(gaze.y).epsilon(1e-12));
    }
    SUBCASE("feature mismatch is rejected") {
        PAModel mx = PAModel::zeros(3);
        PAModel my = PAModel::zeros(3);
        const std::vector<NormalizedPoint> objs(2, NormalizedPoint{0.5, 0.5});
        CHECK_THROWS_AS(fuse_predict(mx, my, gaze, head, objs), std::invalid_argument);
    }
    SUBCASE("online updates let the gaze term dominate when gaze is the truth") {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> d(0.1, 0.9);
        std::normal_distribution<double> noise(0.0, 0.1);
        PAModel mx = PAModel::zeros(3, 0.005, 1.0);
        double fused_err = 0.0, head_err = 0.0;
        int measured = 0;
        for (int step = 0; step < 500; ++step) {
            const double truth = d(rng);
            const double gaze_f = truth; // gaze carries the answer
            const double head_f = std::clamp(truth + noise(rng), 0.0, 1.0);
            const std::vector<double> f{1.0, gaze_f, head_f};
            if (step > 250) {
                fused_err += std::abs(pa_predict(mx, f) - truth);
                head_err += std::abs(head_f - truth);
                ++measured;
            }
            mx = pa_update(mx, f, truth);
        }
        CHECK(std::abs(mx.weights[1]) > std::abs(mx.weights[2]));
        CHECK(fused_err / measured < head_err / measured);
    }
}

TEST_CASE("gaze_assisted_predict wires the lag into the gaze feature") {
    const data::Trace tr = data::synthesize_trace({15, 10.0, 120.0, 14, 0.0});
    const double lag_s = 14.0 / 120.0;
    PaPair models{PAModel::zeros(3), PAModel::zeros(3)};
    models.x.weights = {0.0, 1.0, 0.0};
    models.y.weights = {0.0, 1.0, 0.0};
    const HeadPredictor poly = make_poly_predictor(1);

    SUBCASE("horizon == lag uses the observed gaze, which is the future head") {
        const double t_now = 5.0;
        const auto out = gaze_assisted_predict(tr, t_now, lag_s, lag_s, poly, models, {}, {});
        CHECK(out.gaze_forecast_steps == 0);
        // truth head at t_now + lag equals gaze at t_now by construction
        const auto idx = static_cast<std::size_t>(std::llround((t_now + lag_s) * 120.0));
        CHECK(out.gaze_feature.x == tr.samples[idx].head.x);
        CHECK(out.gaze_feature.y == tr.samples[idx].head.y);
        // the frozen gaze-pass-through model reproduces it
        CHECK(out.point.x == doctest::Approx(out.gaze_feature.x).epsilon(1e-12));
    }
    SUBCASE("horizon of 1 s forecasts the remaining gaze distance") {
        const auto out = gaze_assisted_predict(tr, 5.0, 1.0, lag_s, poly, models, {}, {});
        CHECK(out.gaze_forecast_steps == 120 - 14);
    }
    SUBCASE("per-user lag overrides are accepted across the documented range") {
        for (double lag : {0.08, 0.12, 0.2}) {
            CHECK_NOTHROW(gaze_assisted_predict(tr, 5.0, 0.5, lag, poly, models, {}, {}));
        }
    }
    SUBCASE("insufficient history is an error") {
        CHECK_THROWS_AS(gaze_assisted_predict(tr, 0.0, 1.0, lag_s, poly, models, {}, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("run_benchmark improves with gaze on a planted-lag corpus") {
    std::vector<data::Trace> corpus;
    for (std::uint64_t seed = 100; seed < 104; ++seed)
        corpus.push_back(data::synthesize_trace({seed, 20.0, 120.0, 14, 0.01}));

    BenchmarkConfig config;
    config.horizon_s = 0.1;
    config.lag_s = 14.0 / 120.0;
    config.stride = 4;

    const std::vector<PredictorSpec> predictors{
        {"poly", make_poly_predictor(1)},
        {"ar", make_ar_predictor(4)},
    };
    const auto runs = run_benchmark(corpus, predictors, config);
    REQUIRE(runs.size() == 2);
    for (const PredictorRun& run : runs) {
        CHECK(run.gaze_assisted.mean_euclidean < run.head_only.mean_euclidean);
        CHECK(run.gaze_assisted.tile_accuracy > run.head_only.tile_accuracy);
        CHECK(improvement_pct(run.head_only.mean_euclidean, run.gaze_assisted.mean_euclidean,
                              false) > 0.0);
    }
    // the polynomial row meets the 0.8x bar on this corpus
    CHECK(runs[0].gaze_assisted.mean_euclidean <= 0.8 * runs[0].head_only.mean_euclidean);

    SUBCASE("reports are deterministic") {
        const auto again = run_benchmark(corpus, predictors, config);
        CHECK(benchmark_report_csv(runs) == benchmark_report_csv(again));
    }
}

TEST_CASE("object tracks extend the fusion features") {
    std::vector<data::Trace> corpus{data::synthesize_trace({200, 10.0, 120.0, 14, 0.01})};
    std::vector<data::ObjectTrack> objects(1);
    objects[0].object_id = "obj";
    objects[0].positions = {{0.0, {0.5, 0.5}}, {10.0, {0.6, 0.5}}};

    BenchmarkConfig config;
    config.horizon_s = 0.1;
    config.lag_s = 14.0 / 120.0;
    config.stride = 8;
    const std::vector<PredictorSpec> predictors{{"poly", make_poly_predictor(1)}};
    const auto runs = run_benchmark(corpus, predictors, config, objects);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].gaze_assisted.count > 0);
}

TEST_CASE("simulate_tile_prefetch counts hits and fetched tiles") {
    const TileGrid g{8, 8};
    SUBCASE("perfect prediction with no margin fetches one tile") {
        std::vector<PredictionRecord> recs(3);
        for (auto& r : recs) r.predicted = r.truth = {0.4, 0.4};
        const PrefetchReport rep = simulate_tile_prefetch(recs, g, 0);
        CHECK(rep.hit_ratio == 1.0);
        CHECK(rep.fetched_fraction == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
    }
    SUBCASE("a margin covering the grid always hits and fetches everything") {
        std::vector<PredictionRecord> recs(3);
        for (auto& r : recs) {
            r.predicted = {0.1, 0.1};
            r.truth = {0.9, 0.9};
        }
        const PrefetchReport rep = simulate_tile_prefetch(recs, g, 8);
        CHECK(rep.hit_ratio == 1.0);
        CHECK(rep.fetched_fraction == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("halfwidth one away from the poles fetches a 3x3 block") {
        std::vector<PredictionRecord> recs(1);
        recs[0].predicted = recs[0].truth = {0.5, 0.5};
        const PrefetchReport rep = simulate_tile_prefetch(recs, g, 1);
        CHECK(rep.fetched_fraction == doctest::Approx(9.0 / 64.0).epsilon(1e-12));
        CHECK(rep.hit_ratio == 1.0);
    }
    SUBCASE("column wraparound catches seam misses") {
        std::vector<PredictionRecord> recs(1);
        recs[0].predicted = {0.01, 0.5}; // column 0
        recs[0].truth = {0.99, 0.5};     // column 7
        const PrefetchReport rep = simulate_tile_prefetch(recs, g, 1);
        CHECK(rep.hit_ratio == 1.0);
    }
}

TEST_CASE("frozen head pass-through fusion reproduces head-only records bit for bit") {
    PAModel mx = PAModel::zeros(3);
    PAModel my = PAModel::zeros(3);
    mx.weights = {0.0, 0.0, 1.0};
    my.weights = {0.0, 0.0, 1.0};
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const NormalizedPoint head{std::min(d(rng), 0.999999), d(rng)};
        const NormalizedPoint gaze{std::min(d(rng), 0.999999), d(rng)};
        const NormalizedPoint fused = fuse_predict(mx, my, gaze, head, {});
        CHECK(fused.x == head.x);
        CHECK(fused.y == head.y);
    }
}
