#include "common.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "panogaze/csv.hpp"

namespace panogaze::cli {

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

data::TraceFormat trace_format_from_string(const std::string& name) {
    if (name == "canonical-csv") return data::TraceFormat::CanonicalCsv;
    if (name == "raw-quaternion-log") return data::TraceFormat::RawQuaternionLog;
    throw std::runtime_error("unknown trace format '" + name +
                             "' (expected canonical-csv or raw-quaternion-log)");
}

std::vector<fs::path> sorted_files(const fs::path& dir, std::string_view extension) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == extension)
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> sorted_subdirectories(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory()) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

TraceLoadResult load_trace_dir(const fs::path& dir, data::TraceFormat format) {
    TraceLoadResult result;
    for (const fs::path& file : sorted_files(dir, ".csv")) {
        if (file.filename() == "manifest.csv") continue;
        try {
            result.traces.push_back(data::parse_trace_file(file.string(), format));
        } catch (const std::exception& e) {
            result.errors.emplace_back(file.filename().string(), e.what());
        }
    }
    return result;
}

std::string errors_csv(const std::vector<std::pair<std::string, std::string>>& errors) {
    std::string out = "input,error\n";
    for (const auto& [file, message] : errors) {
        out += csv::quote_field(file);
        out.push_back(',');
        out += csv::quote_field(message);
        out.push_back('\n');
    }
    return out;
}

} // namespace panogaze::cli
