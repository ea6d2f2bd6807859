#include <cmath>
#include <iostream>
#include <mutex>

#include "common.hpp"
#include "panogaze/analytics.hpp"
#include "panogaze/csv.hpp"
#include "panogaze/frame.hpp"
#include "panogaze/parallel.hpp"

namespace panogaze::cli {

namespace {

using analytics::LagSweepResult;

data::Trace ensure_uniform(const data::Trace& tr) {
    const double freq = tr.freq_hz > 0.0 ? tr.freq_hz : 1.0;
    const double dt = 1.0 / freq;
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
        if (std::abs(tr.samples[i].t - tr.samples[i - 1].t - dt) > 1e-6 * dt)
            return data::resample_trace(tr, std::max(1.0, std::round(freq)));
    return tr;
}

} // namespace

int run_analyze(const AnalyzeOptions& opt) {
    data::TraceFormat format;
    try {
        format = trace_format_from_string(opt.format);
    } catch (const std::exception& e) {
        std::cerr << "analyze: " << e.what() << "\n";
        return 2;
    }

    TraceLoadResult loaded = load_trace_dir(opt.input, format);
    auto errors = std::move(loaded.errors);

    if (loaded.traces.empty()) {
        std::cerr << "analyze: no parseable traces in " << opt.input.string() << "\n";
        if (!errors.empty()) {
            try {
                write_file(opt.out / "errors.csv", errors_csv(errors));
            } catch (const std::exception& e) {
                std::cerr << "analyze: " << e.what() << "\n";
            }
        }
        return 2;
    }

    try {
        fs::create_directories(opt.out);
        const auto& traces = loaded.traces;
        const auto bins = static_cast<std::size_t>(opt.bins);

        const auto hist_h =
            analytics::exploration_histogram(traces, analytics::Axis::Horizontal, bins);
        const auto hist_v =
            analytics::exploration_histogram(traces, analytics::Axis::Vertical, bins);
        write_file(opt.out / "exploration_horizontal.csv", analytics::histogram_to_csv(hist_h));
        write_file(opt.out / "exploration_vertical.csv", analytics::histogram_to_csv(hist_v));

        for (const auto& [channel, name] :
             {std::pair{analytics::Channel::Head, "density_head"},
              std::pair{analytics::Channel::Gaze, "density_gaze"}}) {
            const auto density = analytics::density_map(traces, channel, bins, bins);
            write_file(opt.out / (std::string(name) + ".csv"), analytics::heatmap_to_csv(density));
            save_pgm(analytics::heatmap_to_frame(density), opt.out / (std::string(name) + ".pgm"));
        }

        const auto relative = analytics::relative_gaze_heatmap(traces, opt.half_range, bins);
        write_file(opt.out / "relative_gaze.csv", analytics::heatmap_to_csv(relative));
        save_pgm(analytics::heatmap_to_frame(relative), opt.out / "relative_gaze.pgm");

        // per-trace lag sweeps and trajectory exports, then the corpus view
        struct PerTrace {
            bool swept = false;
            LagSweepResult sweep;
            double freq = 0.0;
            std::string error;
        };
        std::vector<PerTrace> per_trace(traces.size());
        parallel_for(traces.size(), opt.jobs, [&](std::size_t i) {
            const data::Trace uniform = ensure_uniform(traces[i]);
            write_file(opt.out / "trajectories" / (traces[i].video_id + ".csv"),
                       analytics::trajectory_to_csv(
                           analytics::trajectory_export(uniform, opt.pps)));
            try {
                per_trace[i].sweep = analytics::lag_mse_sweep(uniform, opt.max_shift);
                per_trace[i].freq = uniform.freq_hz;
                per_trace[i].swept = true;
            } catch (const std::exception& e) {
                per_trace[i].error = e.what();
            }
        });

        std::string per_trace_csv = "trace_id,shift,mse\n";
        std::string summary_csv = "trace_id,best_shift,freq_hz,lag_seconds\n";
        std::vector<LagSweepResult> sweeps;
        double freq_sum = 0.0;
        for (std::size_t i = 0; i < traces.size(); ++i) {
            if (!per_trace[i].swept) {
                errors.emplace_back(traces[i].video_id, per_trace[i].error);
                continue;
            }
            const LagSweepResult& r = per_trace[i].sweep;
            for (std::size_t k = 0; k < r.shifts.size(); ++k) {
                per_trace_csv += traces[i].video_id;
                per_trace_csv.push_back(',');
                per_trace_csv += std::to_string(r.shifts[k]);
                per_trace_csv.push_back(',');
                csv::append_fixed(per_trace_csv, r.mse[k], 9);
                per_trace_csv.push_back('\n');
            }
            summary_csv += traces[i].video_id;
            summary_csv.push_back(',');
            summary_csv += std::to_string(r.best_shift);
            summary_csv.push_back(',');
            csv::append_fixed(summary_csv, per_trace[i].freq, 3);
            summary_csv.push_back(',');
            csv::append_fixed(summary_csv, analytics::optimal_lag_seconds(r, per_trace[i].freq),
                              6);
            summary_csv.push_back('\n');
            sweeps.push_back(r);
            freq_sum += per_trace[i].freq;
        }
        write_file(opt.out / "lag_per_trace.csv", per_trace_csv);

        if (!sweeps.empty()) {
            const LagSweepResult agg = analytics::aggregate_lag_sweeps(sweeps);
            const double mean_freq = freq_sum / static_cast<double>(sweeps.size());
            std::string agg_csv = "shift,mean_mse\n";
            for (std::size_t k = 0; k < agg.shifts.size(); ++k) {
                agg_csv += std::to_string(agg.shifts[k]);
                agg_csv.push_back(',');
                csv::append_fixed(agg_csv, agg.mse[k], 9);
                agg_csv.push_back('\n');
            }
            write_file(opt.out / "lag_aggregate.csv", agg_csv);
            summary_csv += "aggregate,";
            summary_csv += std::to_string(agg.best_shift);
            summary_csv.push_back(',');
            csv::append_fixed(summary_csv, mean_freq, 3);
            summary_csv.push_back(',');
            csv::append_fixed(summary_csv, analytics::optimal_lag_seconds(agg, mean_freq), 6);
            summary_csv.push_back('\n');
        }
        write_file(opt.out / "lag_summary.csv", summary_csv);

        if (!errors.empty()) write_file(opt.out / "errors.csv", errors_csv(errors));
        std::cout << "analyze: processed " << traces.size() << " trace(s), " << errors.size()
                  << " error(s)\n";
        return errors.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "analyze: " << e.what() << "\n";
        return 2;
    }
}

} // namespace panogaze::cli
