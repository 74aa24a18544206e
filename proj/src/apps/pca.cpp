#include "orthokit/apps/pca.hpp"

#include <algorithm>

#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

namespace {

Matrix as_columns(const Matrix& x, SampleLayout layout) {
    return layout == SampleLayout::columns ? x : transpose(x);
}

Matrix centred(const Matrix& x, const Vector& mean) {
    Matrix c = x;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (double& v : c.row_span(i)) {
            v -= mean[i];
        }
    }
    return c;
}

Matrix checked_columns(const PcaModel& model, const Matrix& x, SampleLayout layout) {
    Matrix xc = as_columns(x, layout);
    if (xc.rows() != model.mean.size()) {
        throw DimensionError("pca: samples have dimension " + std::to_string(xc.rows()) +
                             ", model expects " + std::to_string(model.mean.size()));
    }
    return centred(xc, model.mean);
}

}  // namespace

PcaModel pca_fit(const Matrix& x, std::size_t k, SampleLayout layout) {
    const Matrix xs = as_columns(x, layout);
    const std::size_t d = xs.rows();
    const std::size_t n = xs.cols();
    if (n < 2) {
        throw InvalidArgument("pca_fit: need at least 2 samples, got " + std::to_string(n));
    }
    if (k < 1 || k > std::min(d, n)) {
        throw InvalidArgument("pca_fit: k = " + std::to_string(k) + " outside [1, " +
                              std::to_string(std::min(d, n)) + "]");
    }

    PcaModel model;
    model.samples = n;
    model.mean = Vector(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (double v : xs.row_span(i)) {
            s += v;
        }
        model.mean[i] = s / static_cast<double>(n);
    }

    const SvdFactorization f = svd(centred(xs, model.mean), SvdShape::reduced);
    model.components = f.u.left_columns(k);
    model.variances = Vector(k);
    for (std::size_t j = 0; j < k; ++j) {
        model.variances[j] = f.sigma[j] * f.sigma[j] / static_cast<double>(n - 1);
    }
    model.singular_values = f.sigma;
    return model;
}

Matrix pca_scores(const PcaModel& model, const Matrix& x, SampleLayout layout) {
    return transpose_mul(model.components, checked_columns(model, x, layout));
}

Matrix pca_reduce(const PcaModel& model, const Matrix& x, SampleLayout layout) {
    const Matrix xc = checked_columns(model, x, layout);
    Matrix rebuilt = mat_mul(model.components, transpose_mul(model.components, xc));
    for (std::size_t i = 0; i < rebuilt.rows(); ++i) {
        for (double& v : rebuilt.row_span(i)) {
            v += model.mean[i];
        }
    }
    return layout == SampleLayout::columns ? rebuilt : transpose(rebuilt);
}

}  // namespace orthokit
