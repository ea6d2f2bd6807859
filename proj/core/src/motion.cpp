#include "panogaze/motion.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fft.hpp"

namespace panogaze::taxonomy {

namespace {

using cd = std::complex<double>;

// A clean circular shift drives the normalized cross-power peak to 1.0;
// unrelated content leaves it near 1/sqrt(pixels). Peaks below this are
// treated as "no reliable translation".
constexpr double kMinPeakResponse = 0.1;

// Peak of the inverse cross-power spectrum, mapped to a signed circular
// displacement per axis.
std::pair<int, int> phase_correlation_peak(const FrameGray& a, const FrameGray& b) {
    const int s = a.width;
    const std::size_t n = static_cast<std::size_t>(s) * static_cast<std::size_t>(s);
    std::vector<cd> fa(n), fb(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = cd(a.values[i], 0.0);
        fb[i] = cd(b.values[i], 0.0);
    }
    detail::fft2d(fa, s, s, false);
    detail::fft2d(fb, s, s, false);
    for (std::size_t i = 0; i < n; ++i) {
        const cd r = fa[i] * std::conj(fb[i]);
        const double mag = std::abs(r);
        fa[i] = mag > 1e-12 ? r / mag : cd(0.0, 0.0);
    }
    detail::fft2d(fa, s, s, true);

    std::size_t best = 0;
    double best_val = fa[0].real();
    for (std::size_t i = 1; i < n; ++i) {
        if (fa[i].real() > best_val) {
            best_val = fa[i].real();
            best = i;
        }
    }
    if (best_val < kMinPeakResponse) return {0, 0};
    const int px = static_cast<int>(best % static_cast<std::size_t>(s));
    const int py = static_cast<int>(best / static_cast<std::size_t>(s));
    const int dx = px > s / 2 ? px - s : px;
    const int dy = py > s / 2 ? py - s : py;
    // peak sits at (-shift mod s)
    return {-dx, -dy};
}

double face_value_at(const FrameGray& f, double px, double py) {
    return sample_bilinear(f, (px + 0.5) / f.width, (py + 0.5) / f.height);
}

// Best-matching central-crop scale between a and b; candidates fan out
// from 1.0 so exact matches report zero.
double log_scale_estimate(const FrameGray& a, const FrameGray& b) {
    const int s = a.width;
    const double c = (s - 1) / 2.0;
    const int half = s / 4;
    constexpr int kSteps = 10;
    constexpr double kMaxLogScale = 0.15;

    double best_log = 0.0;
    double best_ssd = -1.0;
    for (int rank = 0; rank <= 2 * kSteps; ++rank) {
        // 0, +1, -1, +2, -2, ... in log-scale steps
        const int offset = (rank + 1) / 2 * (rank % 2 == 1 ? 1 : -1);
        const double log_scale = kMaxLogScale * offset / kSteps;
        const double scale = std::exp(log_scale);
        double ssd = 0.0;
        for (int v = -half; v <= half; ++v) {
            for (int u = -half; u <= half; ++u) {
                const double va = face_value_at(a, c + scale * u, c + scale * v);
                const double vb = face_value_at(b, c + u, c + v);
                const double d = va - vb;
                ssd += d * d;
            }
        }
        if (best_ssd < 0.0 || ssd < best_ssd) {
            best_ssd = ssd;
            best_log = log_scale;
        }
    }
    return best_log;
}

} // namespace

MotionTuple estimate_face_motion(const FrameGray& a, const FrameGray& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("estimate_face_motion: frame shapes differ");
    if (a.width != a.height || a.width < 8)
        throw std::invalid_argument("estimate_face_motion: frames must be square, >= 8 px");

    const auto [sx, sy] = phase_correlation_peak(a, b);
    MotionTuple m;
    m.mx = static_cast<double>(sx) / a.width;
    m.my = static_cast<double>(sy) / a.height;
    m.mz = log_scale_estimate(a, b);
    return m;
}

MotionTuple aggregate_camera_motion(std::span<const MotionTuple> faces) {
    if (faces.size() != 6)
        throw std::invalid_argument("aggregate_camera_motion: exactly six face tuples expected");
    MotionTuple m;
    for (const MotionTuple& f : faces) {
        m.mx += f.mx;
        m.my += f.my;
        m.mz += f.mz;
        m.ox += f.ox;
        m.oy += f.oy;
        m.oz += f.oz;
    }
    m.mx /= 6.0;
    m.my /= 6.0;
    m.mz /= 6.0;
    m.ox /= 6.0;
    m.oy /= 6.0;
    m.oz /= 6.0;
    return m;
}

double motion_magnitude(const MotionTuple& m) {
    return std::sqrt(m.mx * m.mx + m.my * m.my + m.mz * m.mz + m.ox * m.ox + m.oy * m.oy +
                     m.oz * m.oz);
}

double video_motion_magnitude(std::span<const FrameGray> frames, int face_size,
                              const FaceMotionEstimator& estimator) {
    if (frames.empty())
        throw std::invalid_argument("video_motion_magnitude: empty frame sequence");
    if (frames.size() == 1) return 0.0;

    FaceMotionEstimator builtin;
    const FaceMotionEstimator* est = &estimator;
    if (!estimator) {
        builtin = [](const FrameGray& x, const FrameGray& y) { return estimate_face_motion(x, y); };
        est = &builtin;
    }

    constexpr geo::CubeFace kFaces[6] = {geo::CubeFace::PosX, geo::CubeFace::NegX,
                                         geo::CubeFace::PosY, geo::CubeFace::NegY,
                                         geo::CubeFace::PosZ, geo::CubeFace::NegZ};
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
        MotionTuple tuples[6];
        for (int f = 0; f < 6; ++f) {
            const FrameGray fa = geo::equirect_to_cubeface(frames[k], kFaces[f], face_size);
            const FrameGray fb = geo::equirect_to_cubeface(frames[k + 1], kFaces[f], face_size);
            tuples[f] = (*est)(fa, fb);
        }
        total += motion_magnitude(aggregate_camera_motion(tuples));
    }
    return total / static_cast<double>(frames.size() - 1);
}

} // namespace panogaze::taxonomy
