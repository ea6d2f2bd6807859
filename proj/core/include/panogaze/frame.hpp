#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace panogaze {

// Single-plane intensity image, row-major, values in [0, 2^bit_depth - 1].
// Equirectangular inputs additionally satisfy width == 2 * height.
struct FrameGray {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<float> values;

    FrameGray() = default;
    FrameGray(int w, int h, int depth = 8, float fill = 0.0f)
        : width(w), height(h), bit_depth(depth),
          values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    float& at(int i, int j) { return values[static_cast<std::size_t>(j) * width + i]; }
    float at(int i, int j) const { return values[static_cast<std::size_t>(j) * width + i]; }
    double max_intensity() const { return static_cast<double>((1u << bit_depth) - 1u); }
    bool same_shape(const FrameGray& o) const {
        return width == o.width && height == o.height && bit_depth == o.bit_depth;
    }
};

// Bilinear sample at normalized (x, y); columns wrap, rows clamp.
double sample_bilinear(const FrameGray& f, double x, double y);

// Binary PGM (P5). maxval <= 255 loads as 8-bit, 256..1023 as 10-bit
// (two-byte big-endian samples); anything larger is rejected.
FrameGray load_pgm(const std::filesystem::path& path);
void save_pgm(const FrameGray& frame, const std::filesystem::path& path);

// Comma-separated matrix of reals, one row per line (saliency input).
FrameGray load_csv_matrix(const std::filesystem::path& path);

// All *.pgm files in a directory, lexicographic order.
std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir);

} // namespace panogaze
