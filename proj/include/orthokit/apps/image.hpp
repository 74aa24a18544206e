#pragma once

// Grayscale image compression and denoising by truncated SVD.

#include <cstddef>

#include "orthokit/matrix.hpp"

namespace orthokit {

struct GrayImage {
    Matrix pixels;  // height x width, values in [0, 255]

    [[nodiscard]] std::size_t height() const noexcept { return pixels.rows(); }
    [[nodiscard]] std::size_t width() const noexcept { return pixels.cols(); }

    // Copy of m with every entry clamped to [0, 255].
    [[nodiscard]] static GrayImage clamped(const Matrix& m);
};

struct CompressedImage {
    GrayImage image;
    Matrix reconstruction;  // rank-k approximation before clamping
    double storage_ratio = 0.0;  // (m + n + 1) k / (m n)
    Vector sigma;  // all singular values of the input
    std::size_t k = 0;
};

[[nodiscard]] double storage_ratio(std::size_t height, std::size_t width, std::size_t k);

// 1 <= k <= min(height, width).
[[nodiscard]] CompressedImage image_compress(const GrayImage& img, std::size_t k);

// Keeps the singular triplets with sigma_j > threshold. A threshold at or
// above sigma_1 yields the all-zero image.
[[nodiscard]] CompressedImage image_denoise(const GrayImage& img, double threshold);

}  // namespace orthokit
