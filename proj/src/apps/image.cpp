#include "orthokit/apps/image.hpp"

#include <algorithm>
#include <cmath>

#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

namespace {

Matrix truncated(const SvdFactorization& f, std::size_t rows, std::size_t cols, std::size_t k) {
    Matrix out(rows, cols);
    for (std::size_t j = 0; j < k; ++j) {
        auto vrow = f.vt.row_span(j);
        for (std::size_t i = 0; i < rows; ++i) {
            const double w = f.sigma[j] * f.u(i, j);
            auto row = out.row_span(i);
            for (std::size_t l = 0; l < cols; ++l) {
                row[l] += w * vrow[l];
            }
        }
    }
    return out;
}

void require_image(const GrayImage& img, const char* op) {
    if (img.pixels.empty()) {
        throw InvalidArgument(std::string(op) + ": empty image");
    }
}

}  // namespace

GrayImage GrayImage::clamped(const Matrix& m) {
    GrayImage img{m};
    for (double& v : img.pixels.data()) {
        v = std::clamp(v, 0.0, 255.0);
    }
    return img;
}

double storage_ratio(std::size_t height, std::size_t width, std::size_t k) {
    return static_cast<double>((height + width + 1) * k) / static_cast<double>(height * width);
}

CompressedImage image_compress(const GrayImage& img, std::size_t k) {
    require_image(img, "image_compress");
    const std::size_t kmax = std::min(img.height(), img.width());
    if (k < 1 || k > kmax) {
        throw InvalidArgument("image_compress: k = " + std::to_string(k) + " outside [1, " +
                              std::to_string(kmax) + "]");
    }
    const SvdFactorization f = svd(img.pixels, SvdShape::reduced);
    CompressedImage out;
    out.reconstruction = truncated(f, img.height(), img.width(), k);
    out.image = GrayImage::clamped(out.reconstruction);
    out.storage_ratio = storage_ratio(img.height(), img.width(), k);
    out.sigma = f.sigma;
    out.k = k;
    return out;
}

CompressedImage image_denoise(const GrayImage& img, double threshold) {
    require_image(img, "image_denoise");
    if (!(threshold >= 0.0)) {
        throw InvalidArgument("image_denoise: threshold must be nonnegative");
    }
    const SvdFactorization f = svd(img.pixels, SvdShape::reduced);
    const auto k = static_cast<std::size_t>(std::count_if(
        f.sigma.begin(), f.sigma.end(), [&](double s) { return s > threshold; }));
    CompressedImage out;
    out.reconstruction = truncated(f, img.height(), img.width(), k);
    out.image = GrayImage::clamped(out.reconstruction);
    out.storage_ratio = storage_ratio(img.height(), img.width(), k);
    out.sigma = f.sigma;
    out.k = k;
    return out;
}

}  // namespace orthokit
