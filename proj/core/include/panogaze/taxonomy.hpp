#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace panogaze::taxonomy {

enum class MotionClass { Motionless, Middle, Moving };
enum class RoiClass { Intensive, Middle, Disperse };

std::string_view to_string(MotionClass c);
std::string_view to_string(RoiClass c);
MotionClass motion_class_from_string(std::string_view s);
RoiClass roi_class_from_string(std::string_view s);

struct NormalizedTriple {
    double quality = 0.0;
    double motion = 0.0;
    double roi = 0.0;
};

// The three per-video metrics, raw and (after normalize_corpus) scaled
// into the open interval (0,1).
struct TaxonomyVector {
    std::string video_id;
    double quality_db = 0.0;
    double motion_mag = 0.0;
    double roi_sd = 0.0;
    std::optional<NormalizedTriple> normalized;
};

// Per-metric min-max scaling into (0,1): (v - min + eps) / (max - min + 2*eps),
// eps = 1e-6. Infinite quality values are clamped to the corpus max finite
// + 1 dB first; a metric with all values identical maps to 0.5 everywhere.
// Needs at least 2 vectors.
std::vector<TaxonomyVector> normalize_corpus(std::vector<TaxonomyVector> vectors);

struct TaxonomyCell {
    MotionClass motion;
    RoiClass roi;
};

// Bins the normalized motion and ROI metrics with two strictly increasing
// thresholds each (values on a cut go to the higher bin). High ROI standard
// distance means Disperse, low means Intensive. Quality stays continuous.
TaxonomyCell classify_video(const NormalizedTriple& v,
                            std::pair<double, double> motion_cuts,
                            std::pair<double, double> roi_cuts);

struct TaxonomyRow {
    TaxonomyVector vec; // normalized must be present
    TaxonomyCell cell;
};

inline constexpr const char* kTaxonomyReportHeader =
    "video_id,quality_db,motion_mag,roi_sd,quality_norm,motion_norm,roi_norm,"
    "motion_cell,roi_cell";

std::string taxonomy_report_csv(const std::vector<TaxonomyRow>& rows);

} // namespace panogaze::taxonomy
