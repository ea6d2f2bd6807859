#pragma once

#include <span>
#include <vector>

#include "panogaze/frame.hpp"
#include "panogaze/geo.hpp"

namespace panogaze::taxonomy {

// Nonnegative saliency intensities; FrameGray reused as the matrix carrier.
using SaliencyMap = FrameGray;

struct Roi {
    geo::NormalizedPoint center; // value-weighted centroid
    double weight = 0.0;         // region area in pixels
};

using RoiSet = std::vector<Roi>;

// Peak-anchored region growing: repeatedly take the global maximum above
// the (fixed) map mean, flood-fill its connected region of values >= mean
// (x wraps), record pixel count and value-weighted centroid, zero the
// region. A constant map degenerates to one full-area ROI at the centroid.
RoiSet extract_rois(const SaliencyMap& map);

// Weighted standard distance about the weighted mean center. The x axis
// is periodic: the mean is the weighted circular mean and deviations use
// wraparound deltas. An antipodal-balanced set (zero circular resultant)
// falls back to the planar mean.
double roi_dispersion(std::span<const Roi> rois);

} // namespace panogaze::taxonomy
