#include "panogaze/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "panogaze/csv.hpp"

namespace panogaze::analytics {

using data::Sample;
using data::Trace;
using geo::NormalizedPoint;

std::uint64_t Histogram1D::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t Heatmap2D::total_in_range() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

std::size_t bin_index(double v, double lo, double hi, std::size_t bins) {
    const double rel = (v - lo) / (hi - lo);
    const auto idx = static_cast<long long>(std::floor(rel * static_cast<double>(bins)));
    return static_cast<std::size_t>(std::clamp(idx, 0ll, static_cast<long long>(bins) - 1));
}

} // namespace

Heatmap2D density_map(std::span<const Trace> traces, Channel channel, std::size_t bins_x,
                      std::size_t bins_y) {
    if (traces.empty()) throw std::invalid_argument("density_map: empty trace list");
    if (bins_x < 1 || bins_y < 1) throw std::invalid_argument("density_map: bins must be >= 1");
    Heatmap2D h;
    h.bins_x = bins_x;
    h.bins_y = bins_y;
    h.counts.assign(bins_x * bins_y, 0);
    for (const Trace& tr : traces) {
        for (const Sample& s : tr.samples) {
            const NormalizedPoint& p = channel == Channel::Head ? s.head : s.gaze;
            ++h.at(bin_index(p.x, 0.0, 1.0, bins_x), bin_index(p.y, 0.0, 1.0, bins_y));
        }
    }
    return h;
}

Histogram1D exploration_histogram(std::span<const Trace> traces, Axis axis, std::size_t bins) {
    if (traces.empty()) throw std::invalid_argument("exploration_histogram: empty trace list");
    if (bins < 1) throw std::invalid_argument("exploration_histogram: bins must be >= 1");
    Histogram1D h;
    h.axis = axis;
    h.counts.assign(bins, 0);
    for (const Trace& tr : traces) {
        for (const Sample& s : tr.samples) {
            const double v = axis == Axis::Horizontal ? s.head.x : s.head.y;
            ++h.counts[bin_index(v, 0.0, 1.0, bins)];
        }
    }
    return h;
}

Heatmap2D relative_gaze_heatmap(std::span<const Trace> traces, double half_range,
                                std::size_t bins) {
    if (traces.empty()) throw std::invalid_argument("relative_gaze_heatmap: empty trace list");
    if (!(half_range > 0.0) || half_range > 0.5)
        throw std::invalid_argument("relative_gaze_heatmap: half_range must be in (0, 0.5]");
    if (bins < 1) throw std::invalid_argument("relative_gaze_heatmap: bins must be >= 1");

    Heatmap2D h;
    h.x_min = h.y_min = -half_range;
    h.x_max = h.y_max = half_range;
    h.bins_x = h.bins_y = bins;
    h.counts.assign(bins * bins, 0);
    for (const Trace& tr : traces) {
        for (const Sample& s : tr.samples) {
            const double dx = geo::wraparound_dx(s.head.x, s.gaze.x);
            const double dy = s.gaze.y - s.head.y;
            if (dx < -half_range || dx > half_range || dy < -half_range || dy > half_range) {
                ++h.overflow;
                continue;
            }
            ++h.at(bin_index(dx, -half_range, half_range, bins),
                   bin_index(dy, -half_range, half_range, bins));
        }
    }
    return h;
}

LagSweepResult lag_mse_sweep(const Trace& tr, int max_shift) {
    if (max_shift < 0) throw std::invalid_argument("lag_mse_sweep: max_shift must be >= 0");
    const auto n = static_cast<long long>(tr.samples.size());
    if (n <= max_shift + 1)
        throw std::invalid_argument("lag_mse_sweep: trace shorter than max_shift + 1");

    LagSweepResult r;
    r.shifts.resize(static_cast<std::size_t>(max_shift) + 1);
    r.mse.resize(static_cast<std::size_t>(max_shift) + 1);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_shift; ++k) {
        double acc = 0.0;
        const long long overlap = n - k;
        for (long long i = 0; i < overlap; ++i) {
            const Sample& now = tr.samples[static_cast<std::size_t>(i)];
            const Sample& later = tr.samples[static_cast<std::size_t>(i + k)];
            const double dx = geo::wraparound_dx(now.gaze.x, later.head.x);
            const double dy = later.head.y - now.gaze.y;
            acc += dx * dx + dy * dy;
        }
        const double mse = acc / static_cast<double>(overlap);
        r.shifts[static_cast<std::size_t>(k)] = k;
        r.mse[static_cast<std::size_t>(k)] = mse;
        if (mse < best) {
            best = mse;
            r.best_shift = k;
        }
    }
    return r;
}

LagSweepResult aggregate_lag_sweeps(std::span<const LagSweepResult> sweeps) {
    if (sweeps.empty()) throw std::invalid_argument("aggregate_lag_sweeps: empty input");
    const std::size_t len = sweeps.front().mse.size();
    for (const auto& s : sweeps)
        if (s.mse.size() != len)
            throw std::invalid_argument("aggregate_lag_sweeps: mismatched sweep lengths");

    LagSweepResult out;
    out.shifts = sweeps.front().shifts;
    out.mse.assign(len, 0.0);
    for (const auto& s : sweeps)
        for (std::size_t k = 0; k < len; ++k) out.mse[k] += s.mse[k];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < len; ++k) {
        out.mse[k] /= static_cast<double>(sweeps.size());
        if (out.mse[k] < best) {
            best = out.mse[k];
            out.best_shift = out.shifts[k];
        }
    }
    return out;
}

double optimal_lag_seconds(const LagSweepResult& r, double freq_hz) {
    if (!(freq_hz > 0.0)) throw std::invalid_argument("optimal_lag_seconds: freq must be > 0");
    return static_cast<double>(r.best_shift) / freq_hz;
}

std::vector<Sample> trajectory_export(const Trace& tr, int points_per_second) {
    if (points_per_second < 1)
        throw std::invalid_argument("trajectory_export: points_per_second must be >= 1");
    std::vector<Sample> out;
    if (tr.samples.empty()) return out;

    const double t0 = tr.samples.front().t;
    const double t1 = tr.samples.back().t;
    const auto grid_count =
        static_cast<std::size_t>(std::floor((t1 - t0) * points_per_second + 1e-9)) + 1;

    std::size_t cursor = 0;
    std::size_t last_idx = std::numeric_limits<std::size_t>::max();
    for (std::size_t g = 0; g < grid_count; ++g) {
        const double t = t0 + static_cast<double>(g) / points_per_second;
        while (cursor + 1 < tr.samples.size() && tr.samples[cursor + 1].t <= t) ++cursor;
        std::size_t idx = cursor;
        if (cursor + 1 < tr.samples.size() &&
            tr.samples[cursor + 1].t - t < t - tr.samples[cursor].t)
            idx = cursor + 1;
        if (idx != last_idx) {
            out.push_back(tr.samples[idx]);
            last_idx = idx;
        }
    }
    return out;
}

std::string heatmap_to_csv(const Heatmap2D& h) {
    std::string out;
    for (std::size_t by = 0; by < h.bins_y; ++by) {
        for (std::size_t bx = 0; bx < h.bins_x; ++bx) {
            if (bx) out.push_back(',');
            out += std::to_string(h.at(bx, by));
        }
        out.push_back('\n');
    }
    return out;
}

FrameGray heatmap_to_frame(const Heatmap2D& h) {
    FrameGray f(static_cast<int>(h.bins_x), static_cast<int>(h.bins_y), 8);
    std::uint64_t max_count = 0;
    for (std::uint64_t c : h.counts) max_count = std::max(max_count, c);
    if (max_count == 0) return f;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        f.values[i] = static_cast<float>(
            std::llround(255.0 * static_cast<double>(h.counts[i]) / static_cast<double>(max_count)));
    return f;
}

std::string histogram_to_csv(const Histogram1D& h) {
    std::string out = "bin_center,count";
    if (h.density) out += ",density";
    out.push_back('\n');
    const std::uint64_t total = h.total();
    const std::size_t bins = h.counts.size();
    for (std::size_t b = 0; b < bins; ++b) {
        csv::append_fixed(out, (static_cast<double>(b) + 0.5) / static_cast<double>(bins), 6);
        out.push_back(',');
        out += std::to_string(h.counts[b]);
        if (h.density) {
            out.push_back(',');
            const double d = total ? static_cast<double>(h.counts[b]) * bins /
                                         static_cast<double>(total)
                                   : 0.0;
            csv::append_fixed(out, d, 9);
        }
        out.push_back('\n');
    }
    return out;
}

std::string trajectory_to_csv(std::span<const Sample> samples) {
    std::string out = "t,head_x,head_y,gaze_x,gaze_y\n";
    for (const Sample& s : samples) {
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

} // namespace panogaze::analytics
