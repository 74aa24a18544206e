#include <gtest/gtest.h>

#include <cmath>

#include "orthokit/apps/digits.hpp"
#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"
#include "test_util.hpp"

namespace ok = orthokit;
using ok::Matrix;
using ok::Vector;
using namespace ok::test;

namespace {

ok::SynthOptions small_options(std::uint64_t seed) {
    ok::SynthOptions o;
    o.classes = 4;
    o.per_class = 30;
    o.pixels = 120;
    o.support = 25;
    o.subspace_dim = 3;
    o.seed = seed;
    return o;
}

Matrix columns(const Matrix& m, std::size_t first, std::size_t count) {
    Matrix out(m.rows(), count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, first + j);
    return out;
}

}  // namespace

TEST(DigitsTrain, ConstantClassGivesUniformBasis) {
    std::vector<Matrix> classes{Matrix(9, 5, 0.4), Matrix(9, 5, 0.0)};
    for (std::size_t j = 0; j < 5; ++j) classes[1](j, j) = 1.0;
    const auto model = ok::digits_train(classes, 1);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(model.bases[0](i, 0)), 1.0 / 3.0, 1e-12);
}

TEST(DigitsTrain, BasesOrthonormal) {
    const auto data = ok::synth_digits(small_options(3));
    const auto model = ok::digits_train(ok::group_by_class(data, 4), 5);
    ASSERT_EQ(model.bases.size(), 4u);
    for (const Matrix& b : model.bases) {
        EXPECT_EQ(b.shape(), "120x5");
        EXPECT_LE(orthogonality_defect(b), 1e-12);
    }
}

TEST(DigitsTrain, SerialMatchesParallel) {
    const auto classes = ok::group_by_class(ok::synth_digits(small_options(4)), 4);
    const auto a = ok::digits_train(classes, 3, true);
    const auto b = ok::digits_train(classes, 3, false);
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(a.bases[c], b.bases[c]);
}

TEST(DigitsTrain, Errors) {
    EXPECT_THROW((void)ok::digits_train(std::vector<Matrix>{}, 1), ok::InvalidArgument);
    std::vector<Matrix> c{Matrix(4, 3), Matrix(5, 3)};
    EXPECT_THROW((void)ok::digits_train(c, 1), ok::DimensionError);
    std::vector<Matrix> few{Matrix(4, 2, 1.0)};
    EXPECT_THROW((void)ok::digits_train(few, 3), ok::InvalidArgument);
    EXPECT_THROW((void)ok::digits_train(few, 0), ok::InvalidArgument);
}

TEST(SubspaceResidual, MonotoneInK) {
    Rng rng(141);
    const Matrix samples = rng.matrix(30, 12);
    const Vector d = rng.vector(30);
    const Matrix u = ok::svd(samples, ok::SvdShape::reduced).u;
    double prev = ok::norm2(d) + 1e-12;
    for (std::size_t k = 1; k <= 12; ++k) {
        const double r = ok::subspace_residual(u.left_columns(k), d);
        EXPECT_LE(r, prev + 1e-12);
        EXPECT_LE(r, ok::norm2(d) + 1e-12);
        prev = r;
    }
}

TEST(SubspaceResidual, VectorInSpanHasZeroResidual) {
    Rng rng(142);
    const Matrix u = ok::svd(rng.matrix(20, 4), ok::SvdShape::reduced).u;
    const Vector d = naive_mat_vec(u, rng.vector(4));
    EXPECT_LE(ok::subspace_residual(u, d), 1e-9);
}

TEST(SubspaceResidual, ScalesLinearly) {
    Rng rng(143);
    const Matrix u = ok::svd(rng.matrix(15, 3), ok::SvdShape::reduced).u;
    const Vector d = rng.vector(15);
    EXPECT_NEAR(ok::subspace_residual(u, 3.5 * d), 3.5 * ok::subspace_residual(u, d), 1e-12);
}

TEST(DigitsClassify, SyntheticDataPerfectlySeparated) {
    auto opts = small_options(5);
    opts.per_class = 40;
    const auto data = ok::synth_digits(opts);
    std::vector<Matrix> train;
    Matrix test(opts.pixels, 4 * 10);
    std::vector<std::size_t> truth;
    const auto classes = ok::group_by_class(data, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        train.push_back(columns(classes[c], 0, 30));
        for (std::size_t j = 0; j < 10; ++j) {
            for (std::size_t i = 0; i < opts.pixels; ++i) test(i, c * 10 + j) = classes[c](i, 30 + j);
            truth.push_back(c);
        }
    }
    const auto pred = ok::digits_classify(ok::digits_train(train, 3), test);
    EXPECT_EQ(pred.labels, truth);
}

TEST(DigitsClassify, BatchedMatchesPerVector) {
    const auto data = ok::synth_digits(small_options(6));
    const auto model = ok::digits_train(ok::group_by_class(data, 4), 4);
    const Matrix d = columns(data.images, 10, 7);
    const auto pred = ok::digits_classify(model, d);
    ASSERT_EQ(pred.residuals.shape(), "4x7");
    for (std::size_t j = 0; j < 7; ++j)
        for (std::size_t c = 0; c < 4; ++c)
            EXPECT_NEAR(pred.residuals(c, j), ok::subspace_residual(model.bases[c], d.get_column(j)),
                        1e-12);
    EXPECT_THROW((void)ok::digits_classify(model, Matrix(5, 1)), ok::DimensionError);
    EXPECT_THROW((void)ok::digits_classify(ok::DigitModel{}, d), ok::InvalidArgument);
}

TEST(SynthDigits, ShapeRangeAndDeterminism) {
    const auto a = ok::synth_digits(small_options(7));
    const auto b = ok::synth_digits(small_options(7));
    EXPECT_EQ(a.images, b.images);
    EXPECT_EQ(a.images.shape(), "120x120");
    ASSERT_EQ(a.labels.size(), 120u);
    EXPECT_EQ(a.labels[29], 0u);
    EXPECT_EQ(a.labels[30], 1u);
    for (double v : a.images.data()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    auto bad = small_options(1);
    bad.support = 40;
    EXPECT_THROW((void)ok::synth_digits(bad), ok::InvalidArgument);
}

TEST(GroupByClass, Errors) {
    ok::DigitDataset d{Matrix(3, 2), {0, 5}};
    EXPECT_THROW((void)ok::group_by_class(d, 3), ok::InvalidArgument);
    d.labels.pop_back();
    EXPECT_THROW((void)ok::group_by_class(d, 3), ok::DimensionError);
}
