#include "orthokit/apps/digits.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

namespace {

Matrix train_class(const Matrix& samples, std::size_t k) {
    return svd(samples, SvdShape::reduced).u.left_columns(k);
}

}  // namespace

DigitModel digits_train(std::span<const Matrix> classes, std::size_t k, bool parallel) {
    if (classes.empty()) {
        throw InvalidArgument("digits_train: no classes");
    }
    if (k < 1) {
        throw InvalidArgument("digits_train: k must be at least 1");
    }
    const std::size_t pixels = classes.front().rows();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].rows() != pixels) {
            throw DimensionError("digits_train: class " + std::to_string(c) + " has " +
                                 std::to_string(classes[c].rows()) + " pixels, expected " +
                                 std::to_string(pixels));
        }
        if (classes[c].cols() < k || pixels < k) {
            throw InvalidArgument("digits_train: class " + std::to_string(c) + " has " +
                                  std::to_string(classes[c].cols()) + " samples, fewer than k = " +
                                  std::to_string(k));
        }
    }

    DigitModel model;
    model.k = k;
    model.bases.resize(classes.size());
    if (parallel) {
        std::vector<std::future<Matrix>> jobs;
        jobs.reserve(classes.size());
        for (const Matrix& samples : classes) {
            jobs.push_back(std::async(std::launch::async, train_class, std::cref(samples), k));
        }
        for (std::size_t c = 0; c < jobs.size(); ++c) {
            model.bases[c] = jobs[c].get();
        }
    } else {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            model.bases[c] = train_class(classes[c], k);
        }
    }
    return model;
}

DigitPrediction digits_classify(const DigitModel& model, const Matrix& d) {
    if (model.bases.empty()) {
        throw InvalidArgument("digits_classify: empty model");
    }
    if (d.rows() != model.pixels()) {
        throw DimensionError("digits_classify: test images have " + std::to_string(d.rows()) +
                             " pixels, model expects " + std::to_string(model.pixels()));
    }
    const std::size_t t = d.cols();
    DigitPrediction out;
    out.residuals = Matrix(model.bases.size(), t);
    for (std::size_t c = 0; c < model.bases.size(); ++c) {
        const Matrix& u = model.bases[c];
        const Matrix diff = d - mat_mul(u, transpose_mul(u, d));
        for (std::size_t j = 0; j < t; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < diff.rows(); ++i) {
                s += diff(i, j) * diff(i, j);
            }
            out.residuals(c, j) = std::sqrt(s);
        }
    }
    out.labels.resize(t);
    for (std::size_t j = 0; j < t; ++j) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < model.bases.size(); ++c) {
            if (out.residuals(c, j) < out.residuals(best, j)) {
                best = c;
            }
        }
        out.labels[j] = best;
    }
    return out;
}

double subspace_residual(const Matrix& basis, const Vector& d) {
    const Vector coords = transpose_vec(basis, d);
    return norm2(d - mat_vec(basis, coords));
}

std::vector<Matrix> group_by_class(const DigitDataset& data, std::size_t classes) {
    if (data.labels.size() != data.images.cols()) {
        throw DimensionError("group_by_class: label count does not match image count");
    }
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t j = 0; j < data.labels.size(); ++j) {
        if (data.labels[j] >= classes) {
            throw InvalidArgument("group_by_class: label " + std::to_string(data.labels[j]) +
                                  " out of range");
        }
        members[data.labels[j]].push_back(j);
    }
    std::vector<Matrix> out;
    out.reserve(classes);
    for (const auto& cols : members) {
        Matrix m(data.images.rows(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                m(i, j) = data.images(i, cols[j]);
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

DigitDataset synth_digits(const SynthOptions& o) {
    if (o.classes == 0 || o.subspace_dim == 0 || o.support < o.subspace_dim) {
        throw InvalidArgument("synth_digits: invalid class or subspace sizes");
    }
    if (o.classes * o.support > o.pixels) {
        throw InvalidArgument("synth_digits: class supports do not fit in the image");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coef(0.2, 1.0);
    std::normal_distribution<double> noise(0.0, o.noise);

    std::vector<std::size_t> pixels(o.pixels);
    std::iota(pixels.begin(), pixels.end(), std::size_t{0});
    std::shuffle(pixels.begin(), pixels.end(), rng);

    DigitDataset data;
    data.images = Matrix(o.pixels, o.classes * o.per_class);
    data.labels.reserve(o.classes * o.per_class);
    const double scale = 1.0 / static_cast<double>(o.subspace_dim);
    for (std::size_t c = 0; c < o.classes; ++c) {
        const auto support = std::span(pixels).subspan(c * o.support, o.support);
        Matrix basis(o.support, o.subspace_dim);
        for (double& v : basis.data()) {
            v = unit(rng);
        }
        for (std::size_t s = 0; s < o.per_class; ++s) {
            const std::size_t col = c * o.per_class + s;
            Vector w(o.subspace_dim);
            for (double& v : w) {
                v = coef(rng) * scale;
            }
            const Vector clean = mat_vec(basis, w);
            for (std::size_t i = 0; i < o.support; ++i) {
                data.images(support[i], col) = clean[i];
            }
            for (std::size_t i = 0; i < o.pixels; ++i) {
                data.images(i, col) = std::clamp(data.images(i, col) + noise(rng), 0.0, 1.0);
            }
            data.labels.push_back(c);
        }
    }
    return data;
}

}  // namespace orthokit
