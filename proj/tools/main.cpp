#include <CLI11.hpp>

#include "common.hpp"

namespace {

// "RxC" -> (rows, cols)
std::pair<int, int> parse_grid(const std::string& text) {
    const auto sep = text.find_first_of("xX");
    if (sep == std::string::npos)
        throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 8x8");
    try {
        const int rows = std::stoi(text.substr(0, sep));
        const int cols = std::stoi(text.substr(sep + 1));
        if (rows < 1 || cols < 1) throw std::invalid_argument("non-positive");
        return {rows, cols};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 8x8");
    }
}

// "a,b" -> (a, b)
std::pair<double, double> parse_cuts(const std::string& flag, const std::string& text) {
    const auto sep = text.find(',');
    if (sep == std::string::npos) throw CLI::ValidationError(flag, "expected two values a,b");
    try {
        const double a = std::stod(text.substr(0, sep));
        const double b = std::stod(text.substr(sep + 1));
        return {a, b};
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected two values a,b");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"panogaze: taxonomy, analytics and gaze-assisted FoV prediction "
                 "for 360-degree head/gaze traces"};
    app.require_subcommand(1);

    using namespace panogaze::cli;

    // synth
    SynthOptions synth;
    std::string synth_manifest;
    auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic head+gaze traces");
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();
    synth_cmd->add_option("--seed", synth.seed, "Master seed (per-trace seeds derive from it)");
    synth_cmd->add_option("--n-traces", synth.n_traces, "Number of traces");
    synth_cmd->add_option("--duration-s", synth.duration_s, "Trace duration in seconds");
    synth_cmd->add_option("--freq-hz", synth.freq_hz, "Sampling rate");
    synth_cmd->add_option("--lag-s", synth.lag_s, "Planted head-behind-gaze lag in seconds");
    synth_cmd->add_option("--noise-sigma", synth.noise_sigma, "Head noise sigma");
    synth_cmd->add_option("--from-manifest", synth_manifest,
                          "Regenerate traces from a previous manifest.csv");

    // analyze
    AnalyzeOptions analyze;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Density maps, exploration histograms, lag sweep");
    analyze_cmd->add_option("--input", analyze.input, "Directory of trace CSV files")->required();
    analyze_cmd->add_option("--out", analyze.out, "Output directory")->required();
    analyze_cmd->add_option("--format", analyze.format,
                            "Trace format: canonical-csv | raw-quaternion-log");
    analyze_cmd->add_option("--bins", analyze.bins, "Histogram/heatmap bins")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--half-range", analyze.half_range,
                            "Relative-gaze heatmap half range");
    analyze_cmd->add_option("--max-shift", analyze.max_shift, "Lag sweep extent in samples")
        ->check(CLI::NonNegativeNumber);
    analyze_cmd->add_option("--pps", analyze.pps, "Trajectory export points per second");
    analyze_cmd->add_option("--jobs", analyze.jobs, "Worker threads");

    // taxonomy
    TaxonomyOptions taxonomy;
    std::string motion_cuts = "0.3333333,0.6666667";
    std::string roi_cuts = "0.3333333,0.6666667";
    auto* taxonomy_cmd = app.add_subcommand(
        "taxonomy", "Quality / camera-motion / ROI-dispersion metrics and 3x3 classification");
    taxonomy_cmd->add_option("--input", taxonomy.input, "Corpus directory (one subdir per video)")
        ->required();
    taxonomy_cmd->add_option("--out", taxonomy.out, "Output directory")->required();
    taxonomy_cmd->add_option("--motion-cuts", motion_cuts, "Motion axis thresholds a,b");
    taxonomy_cmd->add_option("--roi-cuts", roi_cuts, "ROI axis thresholds a,b");
    taxonomy_cmd->add_option("--face-size", taxonomy.face_size, "Cube face size in pixels")
        ->check(CLI::Range(8, 4096));
    taxonomy_cmd->add_option("--jobs", taxonomy.jobs, "Worker threads");

    // predict
    PredictOptions predict;
    std::string grid = "8x8";
    auto* predict_cmd =
        app.add_subcommand("predict", "Head-only vs gaze-assisted FoV prediction benchmark");
    predict_cmd->add_option("--input", predict.input, "Directory of trace CSV files")->required();
    predict_cmd->add_option("--out", predict.out, "Output directory")->required();
    predict_cmd->add_option("--format", predict.format,
                            "Trace format: canonical-csv | raw-quaternion-log");
    predict_cmd->add_option("--grid", grid, "Tile grid ROWSxCOLS");
    predict_cmd->add_option("--horizon-s", predict.horizon_s, "Prediction horizon in seconds");
    predict_cmd->add_option("--lag-s", predict.lag_s, "Gaze-leads-head lag in seconds");
    predict_cmd->add_option("--window-s", predict.window_s, "History window in seconds");
    predict_cmd->add_option("--degree", predict.degree, "Polynomial predictor degree")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--order", predict.order, "AR order (head predictor and gaze forecast)")
        ->check(CLI::PositiveNumber);
    predict_cmd->add_option("--epsilon", predict.epsilon, "PA-I insensitivity margin");
    predict_cmd->add_option("--C", predict.aggressiveness, "PA-I aggressiveness cap");
    predict_cmd->add_option("--stride", predict.stride, "Prediction stride in samples")
        ->check(CLI::PositiveNumber);
    predict_cmd->add_option("--predictors", predict.predictors,
                            "Comma-separated predictor names (poly, ar)");
    predict_cmd->add_option("--objects", predict.objects, "Object-track CSV (object_id,t,x,y)");
    predict_cmd->add_option("--prefetch-halfwidth", predict.prefetch_halfwidth,
                            "Viewport halfwidth in tiles for the prefetch simulation")
        ->check(CLI::NonNegativeNumber);
    predict_cmd->add_option("--seed", predict.seed, "Echoed into the report metadata");
    predict_cmd->add_option("--jobs", predict.jobs, "Worker threads");

    CLI11_PARSE(app, argc, argv);

    if (synth_cmd->parsed()) {
        synth.from_manifest = synth_manifest;
        return run_synth(synth);
    }
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (taxonomy_cmd->parsed()) {
        try {
            taxonomy.motion_cuts = parse_cuts("--motion-cuts", motion_cuts);
            taxonomy.roi_cuts = parse_cuts("--roi-cuts", roi_cuts);
        } catch (const CLI::Error& e) {
            return app.exit(e);
        }
        return run_taxonomy(taxonomy);
    }
    if (predict_cmd->parsed()) {
        try {
            std::tie(predict.grid_rows, predict.grid_cols) = parse_grid(grid);
        } catch (const CLI::Error& e) {
            return app.exit(e);
        }
        return run_predict(predict);
    }
    return 0;
}
