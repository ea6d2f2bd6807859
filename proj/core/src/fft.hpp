#pragma once

#include <complex>
#include <vector>

namespace panogaze::detail {

// Iterative radix-2 for power-of-two lengths, Bluestein otherwise.
// The inverse transform includes the 1/n scaling. Pure function of its
// input buffer, safe to call from worker threads.
void fft(std::vector<std::complex<double>>& data, bool inverse);

// In-place 2-D transform of a row-major width x height grid.
void fft2d(std::vector<std::complex<double>>& grid, int width, int height, bool inverse);

} // namespace panogaze::detail
