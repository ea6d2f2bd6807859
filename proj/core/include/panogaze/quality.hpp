#pragma once

#include <span>
#include <vector>

#include "panogaze/frame.hpp"

namespace panogaze::taxonomy {

// Per-row spherical-area weights for an equirectangular plane:
// w(i,j) = cos((j + 0.5 - height/2) * pi / height), identical across
// columns, all in (0, 1].
std::vector<double> ws_weights(int width, int height);

// Weighted mean squared error over the frame pair.
double wmse(const FrameGray& ref, const FrameGray& test);

// 10*log10(MAX_I^2 / WMSE); identical frames return +infinity.
double ws_psnr(const FrameGray& ref, const FrameGray& test);

// Sequence quality: per-frame WMSE averaged in the MSE domain, then one
// dB conversion.
double video_quality(std::span<const FrameGray> ref_frames,
                     std::span<const FrameGray> test_frames);

} // namespace panogaze::taxonomy
