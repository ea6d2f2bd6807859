#include "panogaze/pa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panogaze::predict {

namespace {

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    if (w >= 1.0) w = 0.0;
    return w;
}

} // namespace

PAModel PAModel::zeros(std::size_t features, double epsilon, double C) {
    PAModel m;
    m.weights.assign(features, 0.0);
    m.epsilon = epsilon;
    m.aggressiveness = C;
    return m;
}

PAModel PAModel::head_passthrough(std::size_t features, double epsilon, double C) {
    if (features < 3)
        throw std::invalid_argument("PAModel: fusion needs at least bias+gaze+head features");
    PAModel m = zeros(features, epsilon, C);
    m.weights[2] = 1.0;
    return m;
}

double pa_predict(const PAModel& m, std::span<const double> features) {
    if (features.size() != m.weights.size())
        throw std::invalid_argument("pa_predict: feature/weight length mismatch");
    double y = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) y += m.weights[i] * features[i];
    return y;
}

PAModel pa_update(const PAModel& m, std::span<const double> features, double target,
                  bool* skipped) {
    if (skipped) *skipped = false;
    if (!(m.epsilon >= 0.0) || !(m.aggressiveness > 0.0))
        throw std::invalid_argument("pa_update: need epsilon >= 0 and C > 0");
    const double predicted = pa_predict(m, features);
    const double loss = std::max(0.0, std::abs(predicted - target) - m.epsilon);
    if (loss == 0.0) return m;

    double norm2 = 0.0;
    for (double f : features) norm2 += f * f;
    if (norm2 == 0.0) {
        if (skipped) *skipped = true;
        return m;
    }
    const double tau = std::min(m.aggressiveness, loss / norm2);
    const double direction = target > predicted ? 1.0 : -1.0;
    PAModel out = m;
    for (std::size_t i = 0; i < features.size(); ++i)
        out.weights[i] += direction * tau * features[i];
    return out;
}

std::vector<double> fusion_features_x(NormalizedPoint gaze_pred, NormalizedPoint head_pred,
                                      std::span<const NormalizedPoint> objects) {
    std::vector<double> f;
    f.reserve(3 + objects.size());
    f.push_back(1.0);
    f.push_back(head_pred.x + geo::wraparound_dx(head_pred.x, gaze_pred.x));
    f.push_back(head_pred.x);
    for (const NormalizedPoint& o : objects)
        f.push_back(head_pred.x + geo::wraparound_dx(head_pred.x, o.x));
    return f;
}

std::vector<double> fusion_features_y(NormalizedPoint gaze_pred, NormalizedPoint head_pred,
                                      std::span<const NormalizedPoint> objects) {
    std::vector<double> f;
    f.reserve(3 + objects.size());
    f.push_back(1.0);
    f.push_back(gaze_pred.y);
    f.push_back(head_pred.y);
    for (const NormalizedPoint& o : objects) f.push_back(o.y);
    return f;
}

NormalizedPoint fuse_predict(const PAModel& m_x, const PAModel& m_y, NormalizedPoint gaze_pred,
                             NormalizedPoint head_pred,
                             std::span<const NormalizedPoint> objects) {
    const std::size_t expected = 3 + objects.size();
    if (m_x.weights.size() != expected || m_y.weights.size() != expected)
        throw std::invalid_argument("fuse_predict: model weight length must be 3 + object count");
    const auto fx = fusion_features_x(gaze_pred, head_pred, objects);
    const auto fy = fusion_features_y(gaze_pred, head_pred, objects);
    NormalizedPoint out;
    out.x = wrap_unit(pa_predict(m_x, fx));
    out.y = std::clamp(pa_predict(m_y, fy), 0.0, 1.0);
    return out;
}

} // namespace panogaze::predict
