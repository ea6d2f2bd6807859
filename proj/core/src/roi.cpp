#include "panogaze/roi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace panogaze::taxonomy {

namespace {

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    if (w >= 1.0) w = 0.0;
    return w;
}

// Value-weighted centroid over linear pixel indices; x accumulated as
// wraparound offsets about the anchor column so seam-straddling regions
// center correctly.
Roi region_centroid(const SaliencyMap& map, std::span<const std::size_t> pixels,
                    double anchor_x) {
    double mass = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t idx : pixels) {
        const double v = map.values[idx];
        const int i = static_cast<int>(idx % static_cast<std::size_t>(map.width));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(map.width));
        const double px = (i + 0.5) / map.width;
        const double py = (j + 0.5) / map.height;
        mass += v;
        sx += v * geo::wraparound_dx(anchor_x, px);
        sy += v * py;
    }
    Roi roi;
    roi.weight = static_cast<double>(pixels.size());
    roi.center.x = wrap_unit(anchor_x + sx / mass);
    roi.center.y = sy / mass;
    return roi;
}

} // namespace

RoiSet extract_rois(const SaliencyMap& map) {
    if (map.width < 1 || map.height < 1)
        throw std::invalid_argument("extract_rois: empty map");
    const std::size_t n = map.values.size();
    double sum = 0.0, max_v = 0.0;
    for (float v : map.values) {
        if (v < 0.0f || !std::isfinite(v))
            throw std::invalid_argument("extract_rois: saliency values must be finite and >= 0");
        sum += v;
        if (v > max_v) max_v = v;
    }
    if (max_v <= 0.0)
        throw std::invalid_argument("extract_rois: all-zero saliency map");

    const double mean = sum / static_cast<double>(n);
    const double stop = mean * (1.0 + 1e-6);

    SaliencyMap work = map;
    RoiSet rois;
    std::vector<std::size_t> region, queue;
    while (true) {
        std::size_t peak = 0;
        double peak_v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (work.values[i] > peak_v) {
                peak_v = work.values[i];
                peak = i;
            }
        }
        if (peak_v <= stop) break;

        // flood fill of values >= mean, 4-connectivity, columns wrap
        region.clear();
        queue.clear();
        queue.push_back(peak);
        const float sentinel = -1.0f;
        const double anchor_x =
            (static_cast<double>(peak % static_cast<std::size_t>(work.width)) + 0.5) / work.width;
        while (!queue.empty()) {
            const std::size_t idx = queue.back();
            queue.pop_back();
            if (work.values[idx] < mean) continue;
            work.values[idx] = sentinel; // visited
            region.push_back(idx);
            const int i = static_cast<int>(idx % static_cast<std::size_t>(work.width));
            const int j = static_cast<int>(idx / static_cast<std::size_t>(work.width));
            const int left = (i + work.width - 1) % work.width;
            const int right = (i + 1) % work.width;
            queue.push_back(static_cast<std::size_t>(j) * work.width + left);
            queue.push_back(static_cast<std::size_t>(j) * work.width + right);
            if (j > 0) queue.push_back(static_cast<std::size_t>(j - 1) * work.width + i);
            if (j + 1 < work.height) queue.push_back(static_cast<std::size_t>(j + 1) * work.width + i);
        }
        rois.push_back(region_centroid(map, region, anchor_x));
        for (std::size_t idx : region) work.values[idx] = 0.0f;
    }

    if (rois.empty()) {
        // constant (or near-constant) map: one ROI covering everything
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        rois.push_back(region_centroid(map, all, 0.5));
    }
    return rois;
}

double roi_dispersion(std::span<const Roi> rois) {
    if (rois.empty())
        throw std::invalid_argument("roi_dispersion: empty ROI set");
    if (rois.size() == 1) {
        if (!(rois[0].weight > 0.0))
            throw std::invalid_argument("roi_dispersion: weights must be positive");
        return 0.0;
    }

    double wsum = 0.0, sin_sum = 0.0, cos_sum = 0.0, y_sum = 0.0;
    for (const Roi& r : rois) {
        if (!(r.weight > 0.0))
            throw std::invalid_argument("roi_dispersion: weights must be positive");
        const double ang = 2.0 * std::numbers::pi * r.center.x;
        wsum += r.weight;
        sin_sum += r.weight * std::sin(ang);
        cos_sum += r.weight * std::cos(ang);
        y_sum += r.weight * r.center.y;
    }

    double mean_x;
    const double resultant = std::hypot(sin_sum, cos_sum) / wsum;
    if (resultant > 1e-9) {
        mean_x = wrap_unit(std::atan2(sin_sum, cos_sum) / (2.0 * std::numbers::pi));
    } else {
        // antipodal-balanced configuration; planar mean is well defined here
        double sx = 0.0;
        for (const Roi& r : rois) sx += r.weight * r.center.x;
        mean_x = sx / wsum;
    }
    const double mean_y = y_sum / wsum;

    double var = 0.0;
    for (const Roi& r : rois) {
        const double dx = geo::wraparound_dx(mean_x, r.center.x);
        const double dy = r.center.y - mean_y;
        var += r.weight * (dx * dx + dy * dy);
    }
    return std::sqrt(var / wsum);
}

} // namespace panogaze::taxonomy
