#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "common.hpp"
#include "panogaze/csv.hpp"

namespace panogaze::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t parse_u64(std::string_view field, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw csv::CsvError("malformed seed field '" + std::string(field) + "'", line_no);
    return v;
}

struct TraceSpec {
    std::string file;
    std::string video_id;
    std::string user_id;
    data::SynthParams params;
};

std::string manifest_csv(const std::vector<TraceSpec>& specs) {
    std::string out = "file,video_id,user_id,seed,duration_s,freq_hz,lag_samples,noise_sigma\n";
    for (const TraceSpec& s : specs) {
        out += s.file;
        out.push_back(',');
        out += s.video_id;
        out.push_back(',');
        out += s.user_id;
        out.push_back(',');
        out += std::to_string(s.params.seed);
        out.push_back(',');
        csv::append_fixed(out, s.params.duration_s, 6);
        out.push_back(',');
        csv::append_fixed(out, s.params.freq_hz, 6);
        out.push_back(',');
        out += std::to_string(s.params.lag_samples);
        out.push_back(',');
        csv::append_fixed(out, s.params.noise_sigma, 9);
        out.push_back('\n');
    }
    return out;
}

std::vector<TraceSpec> specs_from_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw csv::CsvError("empty manifest", 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "file,video_id,user_id,seed,duration_s,freq_hz,lag_samples,noise_sigma")
        throw csv::CsvError("unexpected manifest header", lineno);
    std::vector<TraceSpec> specs;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c = csv::split_line(line);
        if (c.size() != 8) throw csv::CsvError("expected 8 fields", lineno);
        TraceSpec s;
        s.file = c[0];
        s.video_id = c[1];
        s.user_id = c[2];
        s.params.seed = parse_u64(c[3], lineno);
        s.params.duration_s = csv::parse_double(c[4], lineno);
        s.params.freq_hz = csv::parse_double(c[5], lineno);
        s.params.lag_samples = static_cast<long>(csv::parse_int(c[6], lineno));
        s.params.noise_sigma = csv::parse_double(c[7], lineno);
        specs.push_back(std::move(s));
    }
    return specs;
}

} // namespace

int run_synth(const SynthOptions& opt) {
    try {
        std::vector<TraceSpec> specs;
        if (!opt.from_manifest.empty()) {
            specs = specs_from_manifest(opt.from_manifest);
        } else {
            if (opt.n_traces < 1) {
                std::cerr << "synth: --n-traces must be >= 1\n";
                return 2;
            }
            const long lag_samples = std::lround(opt.lag_s * opt.freq_hz);
            for (int i = 0; i < opt.n_traces; ++i) {
                TraceSpec s;
                char name[64];
                std::snprintf(name, sizeof name, "trace_%03d.csv", i);
                char id[64];
                std::snprintf(id, sizeof id, "synth%03d", i);
                char uid[64];
                std::snprintf(uid, sizeof uid, "user%03d", i);
                s.file = name;
                s.video_id = id;
                s.user_id = uid;
                s.params.seed = splitmix64(opt.seed + static_cast<std::uint64_t>(i));
                s.params.duration_s = opt.duration_s;
                s.params.freq_hz = opt.freq_hz;
                s.params.lag_samples = lag_samples;
                s.params.noise_sigma = opt.noise_sigma;
                specs.push_back(std::move(s));
            }
        }

        fs::create_directories(opt.out);
        for (const TraceSpec& s : specs) {
            data::Trace tr = data::synthesize_trace(s.params);
            tr.video_id = s.video_id;
            tr.user_id = s.user_id;
            write_file(opt.out / s.file, data::serialize_trace(tr));
        }
        write_file(opt.out / "manifest.csv", manifest_csv(specs));
        std::cout << "synth: wrote " << specs.size() << " trace(s) to " << opt.out.string()
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return 2;
    }
}

} // namespace panogaze::cli
