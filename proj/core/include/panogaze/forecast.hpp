#pragma once

#include <span>
#include <vector>

#include "panogaze/geo.hpp"

namespace panogaze::predict {

using geo::NormalizedPoint;

// Unwraps x as cumulative wraparound deltas from the first sample; the
// fits run on the unwrapped series and the result re-wraps afterwards.
std::vector<double> unwrap_x(std::span<const NormalizedPoint> points);

// Least-squares polynomial extrapolation over a uniformly spaced window
// (spacing dt), evaluated horizon seconds past the last sample. y clamps
// to [0,1]. Needs at least degree+1 points.
NormalizedPoint polyreg_predict(std::span<const NormalizedPoint> history, double dt,
                                double horizon, int degree);

struct ArForecast {
    NormalizedPoint point;
    bool fell_back = false; // linear extrapolation used (short history / singular fit)
};

// Per-axis AR(order) with intercept, fitted by least squares and iterated
// horizon_steps ahead. Short history (< 3*order) or a singular fit falls
// back to linear extrapolation and flags it.
ArForecast ar_forecast(std::span<const NormalizedPoint> history, int horizon_steps, int order);

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear_system(std::vector<double>& a, std::vector<double>& b, int n);

} // namespace panogaze::predict
