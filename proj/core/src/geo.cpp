#include "panogaze/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "panogaze/frame.hpp"

namespace panogaze::geo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    // fmod can land exactly on 1.0 after the correction when x is a tiny negative.
    if (w >= 1.0) w = 0.0;
    return w;
}

} // namespace

double quaternion_norm(const Quaternion& q) {
    return std::sqrt(q.qx * q.qx + q.qy * q.qy + q.qz * q.qz + q.qw * q.qw);
}

UnitVector3 quat_to_unit_vector(const Quaternion& q) {
    const double n2 = q.qx * q.qx + q.qy * q.qy + q.qz * q.qz + q.qw * q.qw;
    if (std::abs(n2 - 1.0) > 1e-6)
        throw std::invalid_argument("quat_to_unit_vector: quaternion is not unit-norm");
    UnitVector3 r{
        2.0 * q.qx * q.qz + 2.0 * q.qy * q.qw,
        2.0 * q.qy * q.qz - 2.0 * q.qx * q.qw,
        1.0 - 2.0 * q.qx * q.qx - 2.0 * q.qy * q.qy,
    };
    const double n = std::sqrt(r.rx * r.rx + r.ry * r.ry + r.rz * r.rz);
    r.rx /= n;
    r.ry /= n;
    r.rz /= n;
    return r;
}

SphericalAngles unit_vector_to_angles(const UnitVector3& r) {
    const double n = std::sqrt(r.rx * r.rx + r.ry * r.ry + r.rz * r.rz);
    const double c = std::clamp(r.ry / n, -1.0, 1.0);
    SphericalAngles a;
    a.theta = std::acos(c);
    const bool at_pole = (std::abs(r.rx) == 0.0 && std::abs(r.rz) == 0.0);
    a.phi = at_pole ? 0.0 : std::atan2(r.rx, r.rz);
    return a;
}

NormalizedPoint angles_to_point(const SphericalAngles& a) {
    NormalizedPoint p;
    p.x = wrap_unit(a.phi / kTwoPi + 0.5);
    p.y = a.theta / kPi;
    return p;
}

UnitVector3 point_to_unit_vector(const NormalizedPoint& p) {
    const double phi = (p.x - 0.5) * kTwoPi;
    const double theta = p.y * kPi;
    const double st = std::sin(theta);
    return UnitVector3{st * std::sin(phi), std::cos(theta), st * std::cos(phi)};
}

NormalizedPoint unit_vector_to_point(const UnitVector3& r) {
    return angles_to_point(unit_vector_to_angles(r));
}

double wraparound_dx(double x1, double x2) {
    double d = std::fmod(x2 - x1, 1.0);
    if (d <= -0.5) d += 1.0;
    else if (d > 0.5) d -= 1.0;
    return d;
}

UnitVector3 cubeface_pixel_direction(CubeFace face, int u, int v, int face_size) {
    const double a = 2.0 * (u + 0.5) / face_size - 1.0;
    const double b = 2.0 * (v + 0.5) / face_size - 1.0;
    double dx = 0.0, dy = 0.0, dz = 0.0;
    switch (face) {
        case CubeFace::PosZ: dx = a;    dy = -b;   dz = 1.0;  break;
        case CubeFace::NegZ: dx = -a;   dy = -b;   dz = -1.0; break;
        case CubeFace::PosX: dx = 1.0;  dy = -b;   dz = -a;   break;
        case CubeFace::NegX: dx = -1.0; dy = -b;   dz = a;    break;
        case CubeFace::PosY: dx = a;    dy = 1.0;  dz = b;    break;
        case CubeFace::NegY: dx = a;    dy = -1.0; dz = -b;   break;
    }
    const double n = std::sqrt(dx * dx + dy * dy + dz * dz);
    return UnitVector3{dx / n, dy / n, dz / n};
}

FrameGray equirect_to_cubeface(const FrameGray& frame, CubeFace face, int face_size) {
    if (frame.width != 2 * frame.height || frame.height < 1)
        throw std::invalid_argument("equirect_to_cubeface: frame is not 2:1 equirectangular");
    if (face_size < 8)
        throw std::invalid_argument("equirect_to_cubeface: face_size must be >= 8");

    FrameGray out(face_size, face_size, frame.bit_depth);
    for (int v = 0; v < face_size; ++v) {
        for (int u = 0; u < face_size; ++u) {
            const UnitVector3 dir = cubeface_pixel_direction(face, u, v, face_size);
            const NormalizedPoint p = unit_vector_to_point(dir);
            out.at(u, v) = static_cast<float>(sample_bilinear(frame, p.x, p.y));
        }
    }
    return out;
}

} // namespace panogaze::geo
