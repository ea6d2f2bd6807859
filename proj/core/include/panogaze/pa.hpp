#pragma once

#include <span>
#include <vector>

#include "panogaze/geo.hpp"

namespace panogaze::predict {

using geo::NormalizedPoint;

// Online passive-aggressive regression state (PA-I variant): epsilon-
// insensitive loss, update magnitude capped at C.
struct PAModel {
    std::vector<double> weights;
    double epsilon = 0.005;
    double aggressiveness = 1.0; // C

    static PAModel zeros(std::size_t features, double epsilon = 0.005, double C = 1.0);

    // Unit weight on the head feature: fusion starts out reproducing the
    // head predictor and learns to lean on gaze from there.
    static PAModel head_passthrough(std::size_t features, double epsilon = 0.005, double C = 1.0);
};

double pa_predict(const PAModel& m, std::span<const double> features);

// PA-I: loss = max(0, |w.f - target| - eps); tau = min(C, loss/||f||^2);
// w += sign(target - w.f) * tau * f. A zero feature vector with positive
// loss is a no-op that sets *skipped.
PAModel pa_update(const PAModel& m, std::span<const double> features, double target,
                  bool* skipped = nullptr);

// Feature layout per Eq.-style fusion: [bias=1, gaze, head, object_1..N].
// The x features live in the local chart around head.x (head.x plus the
// wraparound offset of the other coordinate), so the seam never splits
// nearby inputs.
std::vector<double> fusion_features_x(NormalizedPoint gaze_pred, NormalizedPoint head_pred,
                                      std::span<const NormalizedPoint> objects);
std::vector<double> fusion_features_y(NormalizedPoint gaze_pred, NormalizedPoint head_pred,
                                      std::span<const NormalizedPoint> objects);

// Weighted fusion of gaze, head and object coordinates; x re-wraps to
// [0,1) and y clamps to [0,1]. Model weight lengths must equal
// 3 + objects.size().
NormalizedPoint fuse_predict(const PAModel& m_x, const PAModel& m_y, NormalizedPoint gaze_pred,
                             NormalizedPoint head_pred,
                             std::span<const NormalizedPoint> objects);

} // namespace panogaze::predict
