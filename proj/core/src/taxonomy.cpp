#include "panogaze/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "panogaze/csv.hpp"

namespace panogaze::taxonomy {

std::string_view to_string(MotionClass c) {
    switch (c) {
        case MotionClass::Motionless: return "Motionless";
        case MotionClass::Middle: return "Middle";
        case MotionClass::Moving: return "Moving";
    }
    return "Middle";
}

std::string_view to_string(RoiClass c) {
    switch (c) {
        case RoiClass::Intensive: return "Intensive";
        case RoiClass::Middle: return "Middle";
        case RoiClass::Disperse: return "Disperse";
    }
    return "Middle";
}

MotionClass motion_class_from_string(std::string_view s) {
    if (s == "Motionless") return MotionClass::Motionless;
    if (s == "Middle") return MotionClass::Middle;
    if (s == "Moving") return MotionClass::Moving;
    throw std::invalid_argument("unknown motion cell label '" + std::string(s) + "'");
}

RoiClass roi_class_from_string(std::string_view s) {
    if (s == "Intensive") return RoiClass::Intensive;
    if (s == "Middle") return RoiClass::Middle;
    if (s == "Disperse") return RoiClass::Disperse;
    throw std::invalid_argument("unknown ROI cell label '" + std::string(s) + "'");
}

namespace {

constexpr double kEps = 1e-6;

// min-max into the open interval; degenerate spread maps everything to 0.5
void scale_metric(std::vector<TaxonomyVector>& vs, double TaxonomyVector::* raw,
                  double NormalizedTriple::* out) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : vs) {
        lo = std::min(lo, v.*raw);
        hi = std::max(hi, v.*raw);
    }
    for (auto& v : vs) {
        double& slot = (*v.normalized).*out;
        slot = (hi > lo) ? (v.*raw - lo + kEps) / (hi - lo + 2.0 * kEps) : 0.5;
    }
}

} // namespace

std::vector<TaxonomyVector> normalize_corpus(std::vector<TaxonomyVector> vectors) {
    if (vectors.size() < 2)
        throw std::invalid_argument("normalize_corpus: need at least 2 vectors");

    // clamp infinite quality (identical-frame videos) to max finite + 1 dB
    double max_finite = -std::numeric_limits<double>::infinity();
    for (const auto& v : vectors)
        if (std::isfinite(v.quality_db)) max_finite = std::max(max_finite, v.quality_db);
    for (auto& v : vectors) {
        if (std::isinf(v.quality_db))
            v.quality_db = std::isfinite(max_finite) ? max_finite + 1.0 : 0.0;
        if (!std::isfinite(v.quality_db) || !std::isfinite(v.motion_mag) ||
            !std::isfinite(v.roi_sd))
            throw std::invalid_argument("normalize_corpus: non-finite metric for video '" +
                                        v.video_id + "'");
        v.normalized = NormalizedTriple{};
    }

    scale_metric(vectors, &TaxonomyVector::quality_db, &NormalizedTriple::quality);
    scale_metric(vectors, &TaxonomyVector::motion_mag, &NormalizedTriple::motion);
    scale_metric(vectors, &TaxonomyVector::roi_sd, &NormalizedTriple::roi);
    return vectors;
}

namespace {

int bin3(double v, std::pair<double, double> cuts) {
    // a value exactly on a cut lands in the higher bin
    if (v < cuts.first) return 0;
    if (v < cuts.second) return 1;
    return 2;
}

} // namespace

TaxonomyCell classify_video(const NormalizedTriple& v, std::pair<double, double> motion_cuts,
                            std::pair<double, double> roi_cuts) {
    auto valid = [](std::pair<double, double> c) {
        return c.first > 0.0 && c.first < c.second && c.second < 1.0;
    };
    if (!valid(motion_cuts) || !valid(roi_cuts))
        throw std::invalid_argument(
            "classify_video: cuts must be strictly increasing inside (0,1)");

    static constexpr MotionClass kMotion[3] = {MotionClass::Motionless, MotionClass::Middle,
                                               MotionClass::Moving};
    // low standard distance = focused ROI = Intensive
    static constexpr RoiClass kRoi[3] = {RoiClass::Intensive, RoiClass::Middle,
                                         RoiClass::Disperse};
    return TaxonomyCell{kMotion[bin3(v.motion, motion_cuts)], kRoi[bin3(v.roi, roi_cuts)]};
}

std::string taxonomy_report_csv(const std::vector<TaxonomyRow>& rows) {
    std::string out = kTaxonomyReportHeader;
    out.push_back('\n');
    for (const auto& row : rows) {
        const auto& v = row.vec;
        const NormalizedTriple norm = v.normalized.value();
        out += csv::quote_field(v.video_id);
        out.push_back(',');
        csv::append_fixed(out, v.quality_db, 6);
        out.push_back(',');
        csv::append_fixed(out, v.motion_mag, 9);
        out.push_back(',');
        csv::append_fixed(out, v.roi_sd, 9);
        out.push_back(',');
        csv::append_fixed(out, norm.quality, 6);
        out.push_back(',');
        csv::append_fixed(out, norm.motion, 6);
        out.push_back(',');
        csv::append_fixed(out, norm.roi, 6);
        out.push_back(',');
        out += to_string(row.cell.motion);
        out.push_back(',');
        out += to_string(row.cell.roi);
        out.push_back('\n');
    }
    return out;
}

} // namespace panogaze::taxonomy
