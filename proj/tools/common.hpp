#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "panogaze/trace.hpp"

namespace panogaze::cli {

namespace fs = std::filesystem;

struct SynthOptions {
    fs::path out;
    std::uint64_t seed = 0;
    int n_traces = 5;
    double duration_s = 60.0;
    double freq_hz = 120.0;
    double lag_s = 0.12;
    double noise_sigma = 0.01;
    fs::path from_manifest; // regenerate from a previous run's manifest
};

struct AnalyzeOptions {
    fs::path input;
    fs::path out;
    std::string format = "canonical-csv";
    int bins = 64;
    double half_range = 0.2;
    int max_shift = 40;
    int pps = 10;
    unsigned jobs = 1;
};

struct TaxonomyOptions {
    fs::path input;
    fs::path out;
    std::pair<double, double> motion_cuts{1.0 / 3.0, 2.0 / 3.0};
    std::pair<double, double> roi_cuts{1.0 / 3.0, 2.0 / 3.0};
    int face_size = 64;
    unsigned jobs = 1;
};

struct PredictOptions {
    fs::path input;
    fs::path out;
    std::string format = "canonical-csv";
    int grid_rows = 8;
    int grid_cols = 8;
    double horizon_s = 1.0;
    double lag_s = 0.12;
    double window_s = 1.0;
    int degree = 1;
    int order = 4;
    double epsilon = 0.005;
    double aggressiveness = 1.0;
    int stride = 1;
    std::string predictors = "poly,ar";
    fs::path objects;
    int prefetch_halfwidth = 1;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

int run_synth(const SynthOptions& opt);
int run_analyze(const AnalyzeOptions& opt);
int run_taxonomy(const TaxonomyOptions& opt);
int run_predict(const PredictOptions& opt);

// shared plumbing
void write_file(const fs::path& path, std::string_view content);
data::TraceFormat trace_format_from_string(const std::string& name);
std::vector<fs::path> sorted_files(const fs::path& dir, std::string_view extension);
std::vector<fs::path> sorted_subdirectories(const fs::path& dir);

struct TraceLoadResult {
    std::vector<data::Trace> traces;                        // parse order
    std::vector<std::pair<std::string, std::string>> errors; // (file, message)
};

TraceLoadResult load_trace_dir(const fs::path& dir, data::TraceFormat format);

std::string errors_csv(const std::vector<std::pair<std::string, std::string>>& errors);

} // namespace panogaze::cli
