#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "panogaze/corpus.hpp"
#include "panogaze/pa.hpp"
#include "panogaze/tiles.hpp"
#include "panogaze/trace.hpp"

namespace panogaze::predict {

// Pluggable head-trajectory predictor: uniformly spaced history (spacing
// dt), returns the position horizon_s ahead of the last sample.
using HeadPredictor =
    std::function<NormalizedPoint(std::span<const NormalizedPoint>, double, double)>;

HeadPredictor make_poly_predictor(int degree);
HeadPredictor make_ar_predictor(int order);

struct PaPair {
    PAModel x;
    PAModel y;
};

struct GazePredictOptions {
    double window_s = 1.0; // history window for both predictors
    int ar_order = 4;      // gaze forecaster order
};

struct GazeAssistedOutcome {
    NormalizedPoint point;        // fused prediction
    NormalizedPoint gaze_feature; // gaze input to the fusion
    NormalizedPoint head_feature; // head predictor output
    int gaze_forecast_steps = 0;  // 0 when an observed gaze sample sufficed
    bool gaze_ar_fallback = false;
};

// One gaze-assisted prediction at t_now for t_now + horizon. With
// horizon <= lag the gaze feature is the observed sample at
// t_now + horizon - lag; otherwise the gaze series is forecast the
// remaining distance. Model updates are the caller's (the benchmark
// loop applies them as ground truth arrives).
GazeAssistedOutcome gaze_assisted_predict(const data::Trace& tr, double t_now, double horizon_s,
                                          double lag_s, const HeadPredictor& head_predictor,
                                          const PaPair& models,
                                          std::span<const data::ObjectTrack> objects,
                                          const GazePredictOptions& opts = {});

struct BenchmarkConfig {
    double horizon_s = 1.0;
    double lag_s = 0.12; // overridable per §-user range 0.08..0.2
    double window_s = 1.0;
    int degree = 1;   // polynomial head predictor
    int ar_order = 4; // AR head predictor and gaze forecaster
    double epsilon = 0.005;
    double aggressiveness = 1.0;
    TileGrid grid{8, 8};
    int stride = 1;    // predict every stride-th sample
    unsigned jobs = 1; // worker threads across traces; results stay deterministic
};

struct PredictorSpec {
    std::string name;
    HeadPredictor fn;
};

struct TraceRunRecords {
    std::string trace_id;
    std::vector<PredictionRecord> head_only;
    std::vector<PredictionRecord> gaze_assisted;
};

struct PredictorRun {
    std::string predictor;
    MetricReport head_only;     // pooled over all traces
    MetricReport gaze_assisted; // pooled over all traces
    std::vector<TraceRunRecords> traces;
};

// Positive when the gaze-assisted value is better (lower distance /
// higher accuracy).
double improvement_pct(double head_only, double gaze_assisted, bool higher_is_better);

// Every predictor in head-only and gaze-assisted (PA-fused) mode over the
// corpus; per-trace models, online PA-I updates once per arrived truth
// sample with the features recorded at prediction time. Fully
// deterministic for fixed inputs.
std::vector<PredictorRun> run_benchmark(std::span<const data::Trace> traces,
                                        std::span<const PredictorSpec> predictors,
                                        const BenchmarkConfig& config,
                                        std::span<const data::ObjectTrack> objects = {});

inline constexpr const char* kBenchmarkReportHeader =
    "predictor,mode,euclidean,manhattan,tile_accuracy,improvement_pct";

// Report CSV mirroring the performance-table layout; improvement_pct is
// the Euclidean improvement, filled on gaze-assisted rows.
std::string benchmark_report_csv(std::span<const PredictorRun> runs);

std::string predictions_csv(std::span<const PredictionRecord> records);

} // namespace panogaze::predict
