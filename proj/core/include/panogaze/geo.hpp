#pragma once

#include <stdexcept>

namespace panogaze {

struct FrameGray;

namespace geo {

// Rotation quaternion as logged by the headset API, scalar part last.
struct Quaternion {
    double qx = 0.0;
    double qy = 0.0;
    double qz = 0.0;
    double qw = 1.0;
};

// Direction on the unit sphere; ry is the "up" component.
struct UnitVector3 {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 1.0;
};

// phi: azimuth in (-pi, pi], measured around the up axis, 0 = forward (+z).
// theta: polar angle from +y (up) in [0, pi].
struct SphericalAngles {
    double phi = 0.0;
    double theta = 0.0;
};

// Position on the equirectangular image with width and height unified to 1.
// x wraps (x in [0,1)); y is top-down (y = 0 is the top row), y in [0,1].
struct NormalizedPoint {
    double x = 0.0;
    double y = 0.0;
};

enum class CubeFace { PosX, NegX, PosY, NegY, PosZ, NegZ };
inline constexpr int kCubeFaceCount = 6;

double quaternion_norm(const Quaternion& q);

// Forward direction (0,0,1) rotated by q, renormalized.
// Throws std::invalid_argument if |q| deviates from 1 by more than 1e-6.
UnitVector3 quat_to_unit_vector(const Quaternion& q);

// theta = arccos(ry / |r|); phi = atan2(rx, rz). Poles return phi = 0.
SphericalAngles unit_vector_to_angles(const UnitVector3& r);

// x = (phi / 2pi + 0.5) mod 1, y = theta / pi.
// Forward (phi=0, theta=pi/2) maps to the image center (0.5, 0.5).
NormalizedPoint angles_to_point(const SphericalAngles& a);

// Inverse of the angles_to_point/unit_vector_to_angles pipeline.
UnitVector3 point_to_unit_vector(const NormalizedPoint& p);

// Convenience composition used by trace adapters and tests.
NormalizedPoint unit_vector_to_point(const UnitVector3& r);

// Signed shortest move d in (-0.5, 0.5] with x1 + d == x2 (mod 1).
// The antipodal tie resolves to +0.5.
double wraparound_dx(double x1, double x2);

// Gnomonic projection of one cube face out of an equirectangular frame,
// bilinear sampling with column wraparound. frame.width must be 2*height
// and face_size >= 8.
FrameGray equirect_to_cubeface(const FrameGray& frame, CubeFace face, int face_size);

// Direction through the center of face pixel (u, v) on an S-sized face.
// Exposed for the projection oracle tests.
UnitVector3 cubeface_pixel_direction(CubeFace face, int u, int v, int face_size);

} // namespace geo
} // namespace panogaze
