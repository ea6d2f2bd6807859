#include "panogaze/trace.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>

#include "panogaze/csv.hpp"

namespace panogaze::data {

namespace {

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    if (w >= 1.0) w = 0.0;
    return w;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double estimate_freq(const std::vector<Sample>& samples) {
    if (samples.size() < 2) return 0.0;
    const double span = samples.back().t - samples.front().t;
    return span > 0.0 ? (samples.size() - 1) / span : 0.0;
}

} // namespace

NormalizedPoint gaze_vector_to_point(double gx, double gy, double gz, std::size_t line_no) {
    const double n = std::sqrt(gx * gx + gy * gy + gz * gz);
    if (!(n > 1e-12))
        throw csv::CsvError("gaze direction vector is degenerate", line_no);
    return geo::unit_vector_to_point(geo::UnitVector3{gx / n, gy / n, gz / n});
}

Trace parse_trace(std::istream& in, TraceFormat format) {
    const char* expected_header =
        format == TraceFormat::CanonicalCsv ? kCanonicalHeader : kRawLogHeader;
    const std::size_t expected_fields = format == TraceFormat::CanonicalCsv ? 5 : 8;

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw csv::CsvError("empty trace stream", 1);
    ++lineno;
    if (strip_cr(line) != expected_header)
        throw csv::CsvError(std::string("expected header '") + expected_header + "'", lineno);

    Trace tr;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = csv::split_line(line);
        if (fields.size() != expected_fields)
            throw csv::CsvError("expected " + std::to_string(expected_fields) + " fields, got " +
                                    std::to_string(fields.size()),
                                lineno);
        Sample s;
        s.t = csv::parse_double(fields[0], lineno);
        if (format == TraceFormat::CanonicalCsv) {
            s.head.x = csv::parse_double(fields[1], lineno);
            s.head.y = csv::parse_double(fields[2], lineno);
            s.gaze.x = csv::parse_double(fields[3], lineno);
            s.gaze.y = csv::parse_double(fields[4], lineno);
        } else {
            geo::Quaternion q;
            q.qx = csv::parse_double(fields[1], lineno);
            q.qy = csv::parse_double(fields[2], lineno);
            q.qz = csv::parse_double(fields[3], lineno);
            q.qw = csv::parse_double(fields[4], lineno);
            try {
                s.head = geo::unit_vector_to_point(geo::quat_to_unit_vector(q));
            } catch (const std::invalid_argument& e) {
                throw csv::CsvError(e.what(), lineno);
            }
            s.gaze = gaze_vector_to_point(csv::parse_double(fields[5], lineno),
                                          csv::parse_double(fields[6], lineno),
                                          csv::parse_double(fields[7], lineno), lineno);
        }
        if (!tr.samples.empty() && s.t <= tr.samples.back().t)
            throw csv::CsvError("non-increasing timestamp", lineno);
        tr.samples.push_back(s);
    }
    if (tr.samples.size() < 2)
        throw csv::CsvError("trace needs at least 2 samples", lineno);
    tr.freq_hz = estimate_freq(tr.samples);
    return tr;
}

Trace parse_trace_file(const std::string& path, TraceFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file " + path);
    Trace tr = parse_trace(in, format);
    tr.video_id = std::filesystem::path(path).stem().string();
    return tr;
}

std::string serialize_trace(const Trace& tr) {
    std::string out = kCanonicalHeader;
    out.push_back('\n');
    for (const Sample& s : tr.samples) {
        csv::append_fixed(out, s.t, 6);
        out.push_back(',');
        csv::append_fixed(out, s.head.x, 9);
        out.push_back(',');
        csv::append_fixed(out, s.head.y, 9);
        out.push_back(',');
        csv::append_fixed(out, s.gaze.x, 9);
        out.push_back(',');
        csv::append_fixed(out, s.gaze.y, 9);
        out.push_back('\n');
    }
    return out;
}

Trace resample_trace(const Trace& tr, double target_hz) {
    if (!(target_hz > 0.0))
        throw std::invalid_argument("resample_trace: target_hz must be positive");
    if (tr.samples.size() < 2)
        throw std::invalid_argument("resample_trace: trace needs at least 2 samples");

    const double t0 = tr.samples.front().t;
    const double t1 = tr.samples.back().t;
    const auto count = static_cast<std::size_t>(std::floor((t1 - t0) * target_hz + 1e-9)) + 1;

    Trace out;
    out.video_id = tr.video_id;
    out.user_id = tr.user_id;
    out.freq_hz = target_hz;
    out.samples.reserve(count);

    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        double t = t0 + static_cast<double>(k) / target_hz;
        if (t > t1) t = t1;
        while (seg + 2 < tr.samples.size() && tr.samples[seg + 1].t < t) ++seg;
        const Sample& a = tr.samples[seg];
        const Sample& b = tr.samples[seg + 1];
        const double span = b.t - a.t;
        const double alpha = span > 0.0 ? std::clamp((t - a.t) / span, 0.0, 1.0) : 0.0;

        Sample s;
        s.t = t;
        s.head.x = wrap_unit(a.head.x + alpha * geo::wraparound_dx(a.head.x, b.head.x));
        s.head.y = a.head.y + alpha * (b.head.y - a.head.y);
        s.gaze.x = wrap_unit(a.gaze.x + alpha * geo::wraparound_dx(a.gaze.x, b.gaze.x));
        s.gaze.y = a.gaze.y + alpha * (b.gaze.y - a.gaze.y);
        out.samples.push_back(s);
    }
    return out;
}

namespace {

// Gaussian deviates via Box-Muller on explicit 53-bit uniforms; unlike
// std::normal_distribution the stream is identical across standard libraries.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Velocity scales of the synthetic gaze walk. Horizontal exploration is
// wider than vertical, mirroring real viewing traces.
constexpr double kWalkSigmaVx = 0.25; // units/s
constexpr double kWalkSigmaVy = 0.10; // units/s
constexpr double kWalkVelTau = 0.30;  // s

} // namespace

Trace synthesize_trace(const SynthParams& p) {
    if (!(p.duration_s > 0.0) || !(p.freq_hz > 0.0))
        throw std::invalid_argument("synthesize_trace: duration and frequency must be positive");
    if (p.lag_samples < 0)
        throw std::invalid_argument("synthesize_trace: lag_samples must be >= 0");
    if (!(p.noise_sigma >= 0.0))
        throw std::invalid_argument("synthesize_trace: noise_sigma must be >= 0");
    const auto n = static_cast<long>(std::llround(p.duration_s * p.freq_hz));
    if (n < 2 || n <= p.lag_samples)
        throw std::invalid_argument("synthesize_trace: duration*freq must exceed lag_samples");

    const double dt = 1.0 / p.freq_hz;
    const double rho = std::exp(-dt / kWalkVelTau);
    const double kick = std::sqrt(1.0 - rho * rho);

    GaussianSource gauss(p.seed);

    // The walk starts lag_samples early so head(t) = gaze(t - lag) holds for
    // every emitted sample.
    const long total = n + p.lag_samples;
    std::vector<NormalizedPoint> walk(static_cast<std::size_t>(total));
    double x = 0.5, y = 0.5;
    double vx = kWalkSigmaVx * gauss.next();
    double vy = kWalkSigmaVy * gauss.next();
    for (long i = 0; i < total; ++i) {
        walk[static_cast<std::size_t>(i)] = NormalizedPoint{x, y};
        vx = rho * vx + kWalkSigmaVx * kick * gauss.next();
        vy = rho * vy + kWalkSigmaVy * kick * gauss.next();
        x = wrap_unit(x + vx * dt);
        y += vy * dt;
        while (y < 0.05 || y > 0.95) {
            if (y > 0.95) y = 1.9 - y;
            if (y < 0.05) y = 0.1 - y;
            vy = -vy;
        }
    }

    Trace tr;
    tr.video_id = "synth";
    tr.user_id = "s" + std::to_string(p.seed);
    tr.freq_hz = p.freq_hz;
    tr.samples.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        Sample& s = tr.samples[static_cast<std::size_t>(i)];
        s.t = static_cast<double>(i) * dt;
        s.gaze = walk[static_cast<std::size_t>(i + p.lag_samples)];
        const NormalizedPoint& delayed = walk[static_cast<std::size_t>(i)];
        const double nx = p.noise_sigma * gauss.next();
        const double ny = p.noise_sigma * gauss.next();
        s.head.x = wrap_unit(delayed.x + nx);
        s.head.y = std::clamp(delayed.y + ny, 0.0, 1.0);
    }
    return tr;
}

std::vector<Violation> validate_trace(const Trace& tr) {
    std::vector<Violation> out;
    const bool freq_ok = tr.freq_hz > 0.0;
    if (!freq_ok)
        out.push_back({ViolationKind::Range, 0, "nominal frequency is not positive"});
    const double gap_limit = freq_ok ? 5.0 / tr.freq_hz : 0.0;

    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        const Sample& s = tr.samples[i];
        if (!(s.t >= 0.0))
            out.push_back({ViolationKind::Range, i, "timestamp before video start"});
        auto check_point = [&](const NormalizedPoint& pt, const char* what) {
            if (!(pt.x >= 0.0) || !(pt.x < 1.0))
                out.push_back({ViolationKind::Range, i, std::string(what) + " x out of [0,1)"});
            if (!(pt.y >= 0.0) || !(pt.y <= 1.0))
                out.push_back({ViolationKind::Range, i, std::string(what) + " y out of [0,1]"});
        };
        check_point(s.head, "head");
        check_point(s.gaze, "gaze");
        if (i > 0) {
            const double dt = s.t - tr.samples[i - 1].t;
            if (dt <= 0.0)
                out.push_back({ViolationKind::Ordering, i, "non-increasing timestamp"});
            else if (freq_ok && dt > gap_limit)
                out.push_back({ViolationKind::Gap, i,
                               "gap of " + csv::format_fixed(dt, 6) + " s exceeds 5/freq"});
        }
    }
    return out;
}

} // namespace panogaze::data
