#include "panogaze/quality.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace panogaze::taxonomy {

std::vector<double> ws_weights(int width, int height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("ws_weights: dimensions must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(height));
    for (int j = 0; j < height; ++j)
        w[static_cast<std::size_t>(j)] =
            std::cos((j + 0.5 - height / 2.0) * std::numbers::pi / height);
    return w;
}

double wmse(const FrameGray& ref, const FrameGray& test) {
    if (!ref.same_shape(test))
        throw std::invalid_argument("wmse: frame shapes differ");
    const auto weights = ws_weights(ref.width, ref.height);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < ref.height; ++j) {
        const double w = weights[static_cast<std::size_t>(j)];
        double row = 0.0;
        for (int i = 0; i < ref.width; ++i) {
            const double d = static_cast<double>(ref.at(i, j)) - static_cast<double>(test.at(i, j));
            row += d * d;
        }
        num += w * row;
        den += w * ref.width;
    }
    return num / den;
}

namespace {

double mse_to_db(double mse, double max_intensity) {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_intensity * max_intensity / mse);
}

} // namespace

double ws_psnr(const FrameGray& ref, const FrameGray& test) {
    return mse_to_db(wmse(ref, test), ref.max_intensity());
}

double video_quality(std::span<const FrameGray> ref_frames,
                     std::span<const FrameGray> test_frames) {
    if (ref_frames.empty() || ref_frames.size() != test_frames.size())
        throw std::invalid_argument("video_quality: need equal-length non-empty sequences");
    double total = 0.0;
    for (std::size_t k = 0; k < ref_frames.size(); ++k)
        total += wmse(ref_frames[k], test_frames[k]);
    return mse_to_db(total / static_cast<double>(ref_frames.size()),
                     ref_frames.front().max_intensity());
}

} // namespace panogaze::taxonomy
