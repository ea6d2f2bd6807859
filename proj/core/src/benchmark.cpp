#include "panogaze/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "panogaze/csv.hpp"
#include "panogaze/forecast.hpp"
#include "panogaze/parallel.hpp"

namespace panogaze::predict {

namespace {

struct UniformTrace {
    double dt = 0.0;
    double t0 = 0.0;
    std::vector<NormalizedPoint> head;
    std::vector<NormalizedPoint> gaze;
    std::vector<double> t;
};

UniformTrace flatten_uniform(const data::Trace& tr) {
    if (tr.samples.size() < 2)
        throw std::invalid_argument("benchmark: trace needs at least 2 samples");
    data::Trace resampled;
    const data::Trace* src = &tr;
    const double freq = tr.freq_hz > 0.0
                            ? tr.freq_hz
                            : (tr.samples.size() - 1) /
                                  (tr.samples.back().t - tr.samples.front().t);
    const double dt = 1.0 / freq;
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
        const double gap = tr.samples[i].t - tr.samples[i - 1].t;
        if (std::abs(gap - dt) > 1e-6 * dt) {
            resampled = data::resample_trace(tr, freq);
            src = &resampled;
            break;
        }
    }
    UniformTrace u;
    u.dt = dt;
    u.t0 = src->samples.front().t;
    u.head.reserve(src->samples.size());
    u.gaze.reserve(src->samples.size());
    u.t.reserve(src->samples.size());
    for (const data::Sample& s : src->samples) {
        u.head.push_back(s.head);
        u.gaze.push_back(s.gaze);
        u.t.push_back(s.t);
    }
    return u;
}

std::vector<NormalizedPoint> object_positions_at(std::span<const data::ObjectTrack> objects,
                                                 double t) {
    std::vector<NormalizedPoint> out;
    out.reserve(objects.size());
    for (const auto& track : objects) out.push_back(data::track_position_at(track, t));
    return out;
}

struct PendingUpdate {
    std::size_t target_index;
    std::vector<double> features_x;
    std::vector<double> features_y;
    double chart_origin_x; // local x chart used when the features were built
};

} // namespace

HeadPredictor make_poly_predictor(int degree) {
    return [degree](std::span<const NormalizedPoint> history, double dt, double horizon_s) {
        return polyreg_predict(history, dt, horizon_s, degree);
    };
}

HeadPredictor make_ar_predictor(int order) {
    return [order](std::span<const NormalizedPoint> history, double dt, double horizon_s) {
        const int steps = std::max(1, static_cast<int>(std::llround(horizon_s / dt)));
        return ar_forecast(history, steps, order).point;
    };
}

GazeAssistedOutcome gaze_assisted_predict(const data::Trace& tr, double t_now, double horizon_s,
                                          double lag_s, const HeadPredictor& head_predictor,
                                          const PaPair& models,
                                          std::span<const data::ObjectTrack> objects,
                                          const GazePredictOptions& opts) {
    if (!(horizon_s > 0.0)) throw std::invalid_argument("gaze_assisted_predict: horizon must be > 0");
    if (lag_s < 0.0) throw std::invalid_argument("gaze_assisted_predict: lag must be >= 0");

    const UniformTrace u = flatten_uniform(tr);
    const auto n = static_cast<long long>(u.head.size());
    const long long i = std::llround((t_now - u.t0) / u.dt);
    if (i < 0 || i >= n) throw std::invalid_argument("gaze_assisted_predict: t_now outside trace");

    const auto window = std::max<long long>(2, std::llround(opts.window_s / u.dt));
    const long long horizon_steps = std::max<long long>(1, std::llround(horizon_s / u.dt));
    const long long lag_steps = std::llround(lag_s / u.dt);
    const long long offset = horizon_steps - lag_steps;
    if (i - window + 1 < 0 || i + offset < 0)
        throw std::invalid_argument("gaze_assisted_predict: insufficient history before t_now");

    GazeAssistedOutcome out;
    const std::span<const NormalizedPoint> head_hist(u.head.data() + (i - window + 1),
                                                     static_cast<std::size_t>(window));
    out.head_feature = head_predictor(head_hist, u.dt, horizon_s);

    if (offset <= 0) {
        out.gaze_feature = u.gaze[static_cast<std::size_t>(i + offset)];
    } else {
        const std::span<const NormalizedPoint> gaze_hist(u.gaze.data() + (i - window + 1),
                                                         static_cast<std::size_t>(window));
        const ArForecast fc = ar_forecast(gaze_hist, static_cast<int>(offset), opts.ar_order);
        out.gaze_feature = fc.point;
        out.gaze_forecast_steps = static_cast<int>(offset);
        out.gaze_ar_fallback = fc.fell_back;
    }

    const auto objs = object_positions_at(objects, t_now + horizon_s);
    out.point = fuse_predict(models.x, models.y, out.gaze_feature, out.head_feature, objs);
    return out;
}

double improvement_pct(double head_only, double gaze_assisted, bool higher_is_better) {
    if (head_only == 0.0) return 0.0;
    const double delta = higher_is_better ? gaze_assisted - head_only : head_only - gaze_assisted;
    return 100.0 * delta / head_only;
}

namespace {

TraceRunRecords run_single_trace(const UniformTrace& u, const std::string& trace_id,
                                 const PredictorSpec& spec, const BenchmarkConfig& config,
                                 std::span<const data::ObjectTrack> objects) {
    const auto n = static_cast<long long>(u.head.size());
    const auto window = std::max<long long>(2, std::llround(config.window_s / u.dt));
    const auto horizon_steps = std::max<long long>(1, std::llround(config.horizon_s / u.dt));
    const long long lag_steps = std::llround(config.lag_s / u.dt);
    const long long offset = horizon_steps - lag_steps;

    TraceRunRecords rec;
    rec.trace_id = trace_id;

    PaPair models{
        PAModel::head_passthrough(3 + objects.size(), config.epsilon, config.aggressiveness),
        PAModel::head_passthrough(3 + objects.size(), config.epsilon, config.aggressiveness)};
    std::deque<PendingUpdate> pending;

    const long long start = std::max<long long>(window - 1, std::max<long long>(0, -offset));
    for (long long i = start; i + horizon_steps < n; i += config.stride) {
        const auto target = static_cast<std::size_t>(i + horizon_steps);
        const NormalizedPoint truth = u.head[target];
        const double t_target = u.t[target];

        const std::span<const NormalizedPoint> head_hist(u.head.data() + (i - window + 1),
                                                         static_cast<std::size_t>(window));
        const NormalizedPoint head_pred = spec.fn(head_hist, u.dt, config.horizon_s);
        rec.head_only.push_back({t_target, head_pred, truth});

        // truths up to i have arrived; apply the postponed updates
        while (!pending.empty() && pending.front().target_index <= static_cast<std::size_t>(i)) {
            const PendingUpdate& up = pending.front();
            const NormalizedPoint arrived = u.head[up.target_index];
            const double target_x_local =
                up.chart_origin_x + geo::wraparound_dx(up.chart_origin_x, arrived.x);
            models.x = pa_update(models.x, up.features_x, target_x_local);
            models.y = pa_update(models.y, up.features_y, arrived.y);
            pending.pop_front();
        }

        NormalizedPoint gaze_feat;
        if (offset <= 0) {
            gaze_feat = u.gaze[static_cast<std::size_t>(i + offset)];
        } else {
            const std::span<const NormalizedPoint> gaze_hist(u.gaze.data() + (i - window + 1),
                                                             static_cast<std::size_t>(window));
            gaze_feat = ar_forecast(gaze_hist, static_cast<int>(offset), config.ar_order).point;
        }
        const auto objs = object_positions_at(objects, t_target);
        const NormalizedPoint fused = fuse_predict(models.x, models.y, gaze_feat, head_pred, objs);
        rec.gaze_assisted.push_back({t_target, fused, truth});

        PendingUpdate up;
        up.target_index = target;
        up.features_x = fusion_features_x(gaze_feat, head_pred, objs);
        up.features_y = fusion_features_y(gaze_feat, head_pred, objs);
        up.chart_origin_x = head_pred.x;
        pending.push_back(std::move(up));
    }
    return rec;
}

} // namespace

std::vector<PredictorRun> run_benchmark(std::span<const data::Trace> traces,
                                        std::span<const PredictorSpec> predictors,
                                        const BenchmarkConfig& config,
                                        std::span<const data::ObjectTrack> objects) {
    if (traces.empty()) throw std::invalid_argument("run_benchmark: empty corpus");
    if (predictors.empty()) throw std::invalid_argument("run_benchmark: no predictors");
    if (config.stride < 1) throw std::invalid_argument("run_benchmark: stride must be >= 1");

    std::vector<UniformTrace> uniform;
    uniform.reserve(traces.size());
    for (const auto& tr : traces) uniform.push_back(flatten_uniform(tr));

    std::vector<PredictorRun> runs;
    for (const PredictorSpec& spec : predictors) {
        PredictorRun run;
        run.predictor = spec.name;
        run.traces.resize(traces.size());

        parallel_for(traces.size(), config.jobs, [&](std::size_t ti) {
            const std::string id = traces[ti].video_id.empty() ? ("trace" + std::to_string(ti))
                                                               : traces[ti].video_id;
            run.traces[ti] = run_single_trace(uniform[ti], id, spec, config, objects);
        });

        std::vector<PredictionRecord> pooled_head, pooled_fused;
        for (const TraceRunRecords& rec : run.traces) {
            pooled_head.insert(pooled_head.end(), rec.head_only.begin(), rec.head_only.end());
            pooled_fused.insert(pooled_fused.end(), rec.gaze_assisted.begin(),
                                rec.gaze_assisted.end());
        }
        if (pooled_head.empty())
            throw std::invalid_argument("run_benchmark: corpus too short for the configured "
                                        "window/horizon");
        run.head_only = evaluate(pooled_head, config.grid);
        run.gaze_assisted = evaluate(pooled_fused, config.grid);
        runs.push_back(std::move(run));
    }
    return runs;
}

std::string benchmark_report_csv(std::span<const PredictorRun> runs) {
    std::string out = kBenchmarkReportHeader;
    out.push_back('\n');
    for (const PredictorRun& run : runs) {
        out += csv::quote_field(run.predictor);
        out += ",head_only,";
        csv::append_fixed(out, run.head_only.mean_euclidean, 6);
        out.push_back(',');
        csv::append_fixed(out, run.head_only.mean_manhattan, 6);
        out.push_back(',');
        csv::append_fixed(out, run.head_only.tile_accuracy, 6);
        out += ",\n";

        out += csv::quote_field(run.predictor);
        out += ",gaze_assisted,";
        csv::append_fixed(out, run.gaze_assisted.mean_euclidean, 6);
        out.push_back(',');
        csv::append_fixed(out, run.gaze_assisted.mean_manhattan, 6);
        out.push_back(',');
        csv::append_fixed(out, run.gaze_assisted.tile_accuracy, 6);
        out.push_back(',');
        csv::append_fixed(
            out,
            improvement_pct(run.head_only.mean_euclidean, run.gaze_assisted.mean_euclidean, false),
            2);
        out.push_back('\n');
    }
    return out;
}

std::string predictions_csv(std::span<const PredictionRecord> records) {
    std::string out = "t,pred_x,pred_y,truth_x,truth_y\n";
    for (const PredictionRecord& r : records) {
        csv::append_fixed(out, r.t, 6);
        out.push_back(',');
        csv::append_fixed(out, r.predicted.x, 9);
        out.push_back(',');
        csv::append_fixed(out, r.predicted.y, 9);
        out.push_back(',');
        csv::append_fixed(out, r.truth.x, 9);
        out.push_back(',');
        csv::append_fixed(out, r.truth.y, 9);
        out.push_back('\n');
    }
    return out;
}

} // namespace panogaze::predict
