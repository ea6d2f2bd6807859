#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "panogaze/frame.hpp"
#include "panogaze/trace.hpp"

namespace panogaze::analytics {

enum class Axis { Horizontal, Vertical };
enum class Channel { Head, Gaze };

struct Histogram1D {
    Axis axis = Axis::Horizontal;
    std::vector<std::uint64_t> counts;
    bool density = false;

    std::uint64_t total() const;
};

struct Heatmap2D {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::size_t bins_x = 0, bins_y = 0;
    std::vector<std::uint64_t> counts; // row-major, counts[by * bins_x + bx]
    std::uint64_t overflow = 0;        // samples outside the binned range

    std::uint64_t& at(std::size_t bx, std::size_t by) { return counts[by * bins_x + bx]; }
    std::uint64_t at(std::size_t bx, std::size_t by) const { return counts[by * bins_x + bx]; }
    std::uint64_t total_in_range() const;
};

struct LagSweepResult {
    std::vector<int> shifts;     // 0..max_shift
    std::vector<double> mse;     // per shift, averaged over its own overlap
    int best_shift = 0;          // argmin, smallest shift on ties
};

// Occupancy of the selected channel over the full [0,1) x [0,1] domain.
Heatmap2D density_map(std::span<const data::Trace> traces, Channel channel,
                      std::size_t bins_x, std::size_t bins_y);

// Marginal histogram of head positions along one axis.
Histogram1D exploration_histogram(std::span<const data::Trace> traces, Axis axis,
                                  std::size_t bins);

// Gaze position relative to the head center: (wraparound dx, dy) binned
// over [-half_range, half_range]^2, out-of-range samples tallied in
// overflow.
Heatmap2D relative_gaze_heatmap(std::span<const data::Trace> traces, double half_range,
                                std::size_t bins);

// MSE between head(t + k*dt) and gaze(t) for k = 0..max_shift, squared
// 2-D distance with wraparound x. Requires a uniformly sampled trace
// longer than max_shift + 1.
LagSweepResult lag_mse_sweep(const data::Trace& tr, int max_shift);

// Mean of per-trace MSE curves per shift; argmin of the mean curve.
LagSweepResult aggregate_lag_sweeps(std::span<const LagSweepResult> sweeps);

double optimal_lag_seconds(const LagSweepResult& r, double freq_hz);

// Uniform subsample for plotting; nearest sample per grid time, duplicates
// dropped so timestamps stay strictly increasing.
std::vector<data::Sample> trajectory_export(const data::Trace& tr, int points_per_second);

// Exports: CSV matrices and 8-bit P5 PGM with max count scaled to 255.
std::string heatmap_to_csv(const Heatmap2D& h);
FrameGray heatmap_to_frame(const Heatmap2D& h);
std::string histogram_to_csv(const Histogram1D& h);
std::string trajectory_to_csv(std::span<const data::Sample> samples);

} // namespace panogaze::analytics
