#pragma once

#include <functional>
#include <span>

#include "panogaze/frame.hpp"
#include "panogaze/geo.hpp"

namespace panogaze::taxonomy {

// Per-face camera motion between two frames: (mx, my) translation in
// face-normalized units/frame (content moving right/down is positive),
// mz the log of the best-matching central-crop scale, (ox, oy, oz)
// rotation in radians/frame.
struct MotionTuple {
    double mx = 0.0;
    double my = 0.0;
    double mz = 0.0;
    double ox = 0.0;
    double oy = 0.0;
    double oz = 0.0;
};

// Estimators are pluggable; the built-in one is classical and keeps the
// rotation components at zero.
using FaceMotionEstimator = std::function<MotionTuple(const FrameGray&, const FrameGray&)>;

// Whole-face phase correlation for (mx, my), central-crop scale search
// for mz. Requires square frames of matching shape.
MotionTuple estimate_face_motion(const FrameGray& a, const FrameGray& b);

// Component-wise mean over exactly six face tuples.
MotionTuple aggregate_camera_motion(std::span<const MotionTuple> faces);

// Euclidean norm of the 6-vector.
double motion_magnitude(const MotionTuple& m);

// Mean aggregated-motion magnitude over consecutive equirectangular frame
// pairs, each pair split into six cube faces first. Returns 0 for a
// single-frame sequence.
double video_motion_magnitude(std::span<const FrameGray> frames, int face_size,
                              const FaceMotionEstimator& estimator = {});

} // namespace panogaze::taxonomy
