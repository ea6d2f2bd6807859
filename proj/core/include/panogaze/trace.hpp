#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "panogaze/geo.hpp"

namespace panogaze::data {

using geo::NormalizedPoint;

struct Sample {
    double t = 0.0; // seconds from video start
    NormalizedPoint head;
    NormalizedPoint gaze;
};

// Time-ordered head+gaze samples for one (user, video).
struct Trace {
    std::string video_id;
    std::string user_id;
    double freq_hz = 0.0; // nominal sampling rate
    std::vector<Sample> samples;
};

enum class TraceFormat { CanonicalCsv, RawQuaternionLog };

inline constexpr const char* kCanonicalHeader = "t,head_x,head_y,gaze_x,gaze_y";
inline constexpr const char* kRawLogHeader = "t,qx,qy,qz,qw,gx,gy,gz";

// Canonical rows are `t,head_x,head_y,gaze_x,gaze_y`; raw-quaternion rows
// are `t,qx,qy,qz,qw,gx,gy,gz` (head from the rotation quaternion, gaze
// from the unit gaze direction vector). Both formats require their header
// line. Malformed rows and non-increasing timestamps throw csv::CsvError
// with the offending line number.
Trace parse_trace(std::istream& in, TraceFormat format);
Trace parse_trace_file(const std::string& path, TraceFormat format);

// Canonical CSV; t with 6 fractional digits, coordinates with 9.
std::string serialize_trace(const Trace& tr);

// The single place that interprets the raw log's gaze columns as a unit
// direction vector.
NormalizedPoint gaze_vector_to_point(double gx, double gy, double gz, std::size_t line_no);

// Linear interpolation onto a uniform grid covering [t_first, t_last],
// wraparound-aware in x.
Trace resample_trace(const Trace& tr, double target_hz);

struct SynthParams {
    std::uint64_t seed = 0;
    double duration_s = 60.0;
    double freq_hz = 120.0;
    long lag_samples = 14;
    double noise_sigma = 0.01;
};

// Deterministic synthetic trace: gaze follows a smooth random walk
// (x wraps, y reflects at 0.05/0.95) and head(t) = gaze(t - lag) + noise.
// The gaze walk is seeded far enough back that the lag relation holds for
// every emitted sample.
Trace synthesize_trace(const SynthParams& params);

enum class ViolationKind { Range, Ordering, Gap };

struct Violation {
    ViolationKind kind;
    std::size_t sample_index;
    std::string message;
};

// Reports range violations, ordering violations and gaps > 5 / freq_hz.
std::vector<Violation> validate_trace(const Trace& tr);

} // namespace panogaze::data
