#include <fstream>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "panogaze/benchmark.hpp"
#include "panogaze/csv.hpp"

namespace panogaze::cli {

namespace {

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

int run_predict(const PredictOptions& opt) {
    data::TraceFormat format;
    std::vector<predict::PredictorSpec> predictors;
    try {
        format = trace_format_from_string(opt.format);
        for (const std::string& name : split_names(opt.predictors)) {
            if (name == "poly")
                predictors.push_back({name, predict::make_poly_predictor(opt.degree)});
            else if (name == "ar")
                predictors.push_back({name, predict::make_ar_predictor(opt.order)});
            else
                throw std::runtime_error("unknown predictor '" + name +
                                         "' (expected poly or ar)");
        }
        if (predictors.empty()) throw std::runtime_error("no predictors configured");
    } catch (const std::exception& e) {
        std::cerr << "predict: " << e.what() << "\n";
        return 2;
    }

    TraceLoadResult loaded = load_trace_dir(opt.input, format);
    if (loaded.traces.empty()) {
        std::cerr << "predict: no parseable traces in " << opt.input.string() << "\n";
        return 2;
    }

    try {
        std::vector<data::ObjectTrack> objects;
        if (!opt.objects.empty()) {
            std::ifstream in(opt.objects);
            if (!in) throw std::runtime_error("cannot open objects file " + opt.objects.string());
            objects = data::parse_object_tracks(in);
        }

        predict::BenchmarkConfig config;
        config.horizon_s = opt.horizon_s;
        config.lag_s = opt.lag_s;
        config.window_s = opt.window_s;
        config.degree = opt.degree;
        config.ar_order = opt.order;
        config.epsilon = opt.epsilon;
        config.aggressiveness = opt.aggressiveness;
        config.grid = {opt.grid_rows, opt.grid_cols};
        config.stride = opt.stride;
        config.jobs = opt.jobs;

        const auto runs = predict::run_benchmark(loaded.traces, predictors, config, objects);

        fs::create_directories(opt.out);
        std::string report;
        report += "# grid=" + std::to_string(opt.grid_rows) + "x" +
                  std::to_string(opt.grid_cols) + "\n";
        report += "# horizon_s=" + csv::format_fixed(opt.horizon_s, 6) + "\n";
        report += "# lag_s=" + csv::format_fixed(opt.lag_s, 6) + "\n";
        report += "# window_s=" + csv::format_fixed(opt.window_s, 6) + "\n";
        report += "# degree=" + std::to_string(opt.degree) + "\n";
        report += "# order=" + std::to_string(opt.order) + "\n";
        report += "# epsilon=" + csv::format_fixed(opt.epsilon, 6) + "\n";
        report += "# C=" + csv::format_fixed(opt.aggressiveness, 6) + "\n";
        report += "# stride=" + std::to_string(opt.stride) + "\n";
        report += "# seed=" + std::to_string(opt.seed) + "\n";
        report += predict::benchmark_report_csv(runs);
        write_file(opt.out / "benchmark.csv", report);

        std::string prefetch = "predictor,mode,halfwidth,hit_ratio,fetched_fraction\n";
        for (const predict::PredictorRun& run : runs) {
            std::vector<predict::PredictionRecord> head_records, fused_records;
            for (const auto& rec : run.traces) {
                write_file(opt.out / "predictions" /
                               (rec.trace_id + "__" + run.predictor + "__head_only.csv"),
                           predict::predictions_csv(rec.head_only));
                write_file(opt.out / "predictions" /
                               (rec.trace_id + "__" + run.predictor + "__gaze_assisted.csv"),
                           predict::predictions_csv(rec.gaze_assisted));
                head_records.insert(head_records.end(), rec.head_only.begin(),
                                    rec.head_only.end());
                fused_records.insert(fused_records.end(), rec.gaze_assisted.begin(),
                                     rec.gaze_assisted.end());
            }
            for (const auto& [mode, records] :
                 {std::pair{"head_only", &head_records},
                  std::pair{"gaze_assisted", &fused_records}}) {
                const auto rep =
                    predict::simulate_tile_prefetch(*records, config.grid, opt.prefetch_halfwidth);
                prefetch += run.predictor;
                prefetch.push_back(',');
                prefetch += mode;
                prefetch.push_back(',');
                prefetch += std::to_string(opt.prefetch_halfwidth);
                prefetch.push_back(',');
                csv::append_fixed(prefetch, rep.hit_ratio, 6);
                prefetch.push_back(',');
                csv::append_fixed(prefetch, rep.fetched_fraction, 6);
                prefetch.push_back('\n');
            }
        }
        write_file(opt.out / "prefetch.csv", prefetch);

        if (!loaded.errors.empty())
            write_file(opt.out / "errors.csv", errors_csv(loaded.errors));
        std::cout << "predict: " << loaded.traces.size() << " trace(s), "
                  << predictors.size() << " predictor(s), " << loaded.errors.size()
                  << " error(s)\n";
        return loaded.errors.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "predict: " << e.what() << "\n";
        return 2;
    }
}

} // namespace panogaze::cli
