#include "fft.hpp"

#include <numbers>
#include <stdexcept>

namespace panogaze::detail {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (cd& x : a) x /= static_cast<double>(n);
}

// Chirp-z decomposition: jk = (j^2 + k^2 - (j-k)^2) / 2 turns the DFT into
// a circular convolution evaluated at a power-of-two length.
void fft_bluestein(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    const std::size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<cd> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle small for precision
        const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % (2ull * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = cd(std::cos(ang), std::sin(ang));
    }

    std::vector<cd> fa(m, cd(0.0, 0.0)), fb(m, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
    fb[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);

    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
    fft_pow2(fa, true);

    for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * chirp[k];
    if (inverse)
        for (cd& x : a) x /= static_cast<double>(n);
}

} // namespace

void fft(std::vector<cd>& data, bool inverse) {
    if (data.empty()) throw std::invalid_argument("fft: empty input");
    if (data.size() == 1) return;
    if (is_pow2(data.size()))
        fft_pow2(data, inverse);
    else
        fft_bluestein(data, inverse);
}

void fft2d(std::vector<cd>& grid, int width, int height, bool inverse) {
    if (width < 1 || height < 1 ||
        grid.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("fft2d: shape mismatch");
    std::vector<cd> buf(static_cast<std::size_t>(width));
    for (int j = 0; j < height; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * width;
        for (int i = 0; i < width; ++i) buf[static_cast<std::size_t>(i)] = grid[base + i];
        fft(buf, inverse);
        for (int i = 0; i < width; ++i) grid[base + i] = buf[static_cast<std::size_t>(i)];
    }
    buf.assign(static_cast<std::size_t>(height), cd{});
    for (int i = 0; i < width; ++i) {
        for (int j = 0; j < height; ++j)
            buf[static_cast<std::size_t>(j)] = grid[static_cast<std::size_t>(j) * width + i];
        fft(buf, inverse);
        for (int j = 0; j < height; ++j)
            grid[static_cast<std::size_t>(j) * width + i] = buf[static_cast<std::size_t>(j)];
    }
}

} // namespace panogaze::detail
