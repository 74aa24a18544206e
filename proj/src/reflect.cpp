#include "orthokit/reflect.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "orthokit/error.hpp"

namespace orthokit {

HouseholderReflector householder_vector(std::span<const double> x) {
    if (x.empty()) {
        throw InvalidArgument("householder_vector: empty vector");
    }
    const double nx = norm2(x);
    if (nx == 0.0) {
        throw InvalidArgument("householder_vector: zero vector has no reflector");
    }
    std::vector<double> u(x.begin(), x.end());
    const double sign = x[0] < 0.0 ? -1.0 : 1.0;
    u[0] += sign * nx;
    // u^T u = 2 ||x|| (||x|| + |x_0|), so beta needs no second pass over u.
    const double beta = 1.0 / (nx * (nx + std::abs(x[0])));
    return {Vector(std::move(u)), beta};
}

void apply_left_inplace(const HouseholderReflector& h, Matrix& a, std::size_t row0,
                        std::size_t col0) {
    const std::size_t len = h.size();
    if (row0 + len > a.rows() || col0 > a.cols()) {
        throw DimensionError("householder: reflector of length " + std::to_string(len) +
                             " does not fit rows of " + a.shape());
    }
    const std::size_t nc = a.cols() - col0;
    std::vector<double> w(nc, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        const double ui = h.u[i];
        if (ui == 0.0) {
            continue;
        }
        auto row = a.row_span(row0 + i).subspan(col0);
        for (std::size_t j = 0; j < nc; ++j) {
            w[j] += ui * row[j];
        }
    }
    for (std::size_t i = 0; i < len; ++i) {
        const double f = h.beta * h.u[i];
        if (f == 0.0) {
            continue;
        }
        auto row = a.row_span(row0 + i).subspan(col0);
        for (std::size_t j = 0; j < nc; ++j) {
            row[j] -= f * w[j];
        }
    }
}

void apply_right_inplace(Matrix& a, const HouseholderReflector& h, std::size_t col0,
                         std::size_t row0) {
    const std::size_t len = h.size();
    if (col0 + len > a.cols() || row0 > a.rows()) {
        throw DimensionError("householder: reflector of length " + std::to_string(len) +
                             " does not fit columns of " + a.shape());
    }
    for (std::size_t i = row0; i < a.rows(); ++i) {
        auto row = a.row_span(i).subspan(col0, len);
        const double f = h.beta * dot(row, h.u.span());
        if (f == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < len; ++j) {
            row[j] -= f * h.u[j];
        }
    }
}

Matrix householder_apply_left(const HouseholderReflector& h, const Matrix& a) {
    if (h.size() != a.rows()) {
        throw DimensionError("householder_apply_left: reflector length " +
                             std::to_string(h.size()) + " vs matrix " + a.shape());
    }
    Matrix out = a;
    apply_left_inplace(h, out, 0, 0);
    return out;
}

Matrix householder_apply_right(const Matrix& a, const HouseholderReflector& h) {
    if (h.size() != a.cols()) {
        throw DimensionError("householder_apply_right: matrix " + a.shape() +
                             " vs reflector length " + std::to_string(h.size()));
    }
    Matrix out = a;
    apply_right_inplace(out, h, 0, 0);
    return out;
}

Vector householder_apply(const HouseholderReflector& h, const Vector& x) {
    if (h.size() != x.size()) {
        throw DimensionError("householder_apply: reflector and vector lengths differ");
    }
    const double f = h.beta * dot(h.u.span(), x.span());
    Vector out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= f * h.u[i];
    }
    return out;
}

Matrix householder_dense(const HouseholderReflector& h) {
    const std::size_t n = h.size();
    Matrix out = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) -= h.beta * h.u[i] * h.u[j];
        }
    }
    return out;
}

std::pair<double, double> givens_params(double x, double y) {
    if (x == 0.0 && y == 0.0) {
        throw InvalidArgument("givens_params: both entries are zero");
    }
    if (std::abs(x) > std::abs(y)) {
        const double t = y / x;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        return {c, c * t};
    }
    const double t = x / y;
    const double s = 1.0 / std::sqrt(1.0 + t * t);
    return {s * t, s};
}

void givens_apply_inplace(const GivensRotation& g, Matrix& a, std::size_t col0) {
    if (g.j >= g.k || g.k >= a.rows()) {
        throw InvalidArgument("givens_apply: rows (" + std::to_string(g.j) + "," +
                              std::to_string(g.k) + ") invalid for " + a.shape());
    }
    auto rj = a.row_span(g.j);
    auto rk = a.row_span(g.k);
    for (std::size_t col = col0; col < a.cols(); ++col) {
        const double xj = rj[col];
        const double xk = rk[col];
        rj[col] = g.c * xj + g.s * xk;
        rk[col] = -g.s * xj + g.c * xk;
    }
}

Matrix givens_apply(const GivensRotation& g, const Matrix& a) {
    Matrix out = a;
    givens_apply_inplace(g, out, 0);
    return out;
}

}  // namespace orthokit
