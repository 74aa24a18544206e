#include <gtest/gtest.h>

#include <cmath>

#include "orthokit/apps/image.hpp"
#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"
#include "test_util.hpp"

namespace ok = orthokit;
using ok::GrayImage;
using ok::Matrix;
using ok::Vector;
using namespace ok::test;

namespace {

GrayImage random_image(Rng& rng, std::size_t h, std::size_t w) {
    Matrix p(h, w);
    for (auto& v : p.data()) v = std::round(rng.uniform(0, 255));
    return {p};
}

// Smooth rank-2 pattern with values inside [40, 215].
Matrix rank2_pattern(std::size_t h, std::size_t w) {
    Matrix p(h, w);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j)
            p(i, j) = 128.0 + 60.0 * std::sin(0.3 * static_cast<double>(i)) +
                      25.0 * std::cos(0.2 * static_cast<double>(j)) ;
    return p;
}

}  // namespace

TEST(StorageRatio, Formula) {
    EXPECT_DOUBLE_EQ(ok::storage_ratio(20, 16, 3), 37.0 * 3 / 320.0);
    for (std::size_t k = 1; k <= 16; ++k) {
        const double bound = 320.0 / 37.0;
        EXPECT_EQ(ok::storage_ratio(20, 16, k) < 1.0, static_cast<double>(k) < bound);
    }
}

TEST(ImageCompress, FullRankReproduces) {
    Rng rng(131);
    const GrayImage img = random_image(rng, 12, 9);
    const auto out = ok::image_compress(img, 9);
    EXPECT_LE(max_abs_diff(out.image.pixels, img.pixels), 1.0);
    EXPECT_EQ(out.k, 9u);
}

TEST(ImageCompress, RankOneExact) {
    Matrix p(8, 6);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            p(i, j) = (10.0 + static_cast<double>(i) * 3.0) * (1.0 + static_cast<double>(j) * 0.5);
    const auto out = ok::image_compress({p}, 1);
    EXPECT_LE(max_abs_diff(out.image.pixels, p), 1e-10);
}

TEST(ImageCompress, TruncationErrorIsNextSingularValue) {
    Rng rng(132);
    const GrayImage img = random_image(rng, 20, 16);
    const Vector s = ok::singular_values(img.pixels);
    for (std::size_t k = 1; k < 16; ++k) {
        const auto out = ok::image_compress(img, k);
        EXPECT_NEAR(ok::norm2(img.pixels - out.reconstruction), s[k], 1e-8 * s[0]);
        for (double v : out.image.pixels.data()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 255.0);
        }
    }
}

TEST(ImageCompress, Errors) {
    Rng rng(133);
    const GrayImage img = random_image(rng, 5, 4);
    EXPECT_THROW((void)ok::image_compress(img, 0), ok::InvalidArgument);
    EXPECT_THROW((void)ok::image_compress(img, 5), ok::InvalidArgument);
    EXPECT_THROW((void)ok::image_compress(GrayImage{}, 1), ok::InvalidArgument);
}

TEST(ImageDenoise, ZeroThresholdKeepsEverything) {
    Rng rng(134);
    const GrayImage img = random_image(rng, 10, 7);
    const auto out = ok::image_denoise(img, 0.0);
    EXPECT_LE(max_abs_diff(out.image.pixels, img.pixels), 1.0);
}

TEST(ImageDenoise, RemovesNoiseFromLowRankImage) {
    Rng rng(135);
    const Matrix clean = rank2_pattern(32, 24);
    Matrix noisy = clean;
    for (auto& v : noisy.data()) v += 3.0 * rng.normal();
    const Vector s = ok::singular_values(noisy);
    const auto out = ok::image_denoise({noisy}, 0.5 * (s[1] + s[2]));
    EXPECT_EQ(out.k, 2u);
    EXPECT_LT(naive_frobenius(out.image.pixels - clean), naive_frobenius(noisy - clean));
}

TEST(ImageDenoise, ThresholdAboveLargestGivesZeroImage) {
    Rng rng(136);
    const GrayImage img = random_image(rng, 6, 6);
    const auto out = ok::image_denoise(img, ok::norm2(img.pixels) * 2);
    EXPECT_EQ(out.k, 0u);
    EXPECT_EQ(out.image.pixels, Matrix(6, 6));
    EXPECT_THROW((void)ok::image_denoise(img, -1.0), ok::InvalidArgument);
}

TEST(GrayImage, ClampedRange) {
    const auto img = GrayImage::clamped(Matrix{{-5, 300}, {12.5, 255}});
    EXPECT_EQ(img.pixels, (Matrix{{0, 255}, {12.5, 255}}));
    EXPECT_EQ(img.height(), 2u);
    EXPECT_EQ(img.width(), 2u);
}
