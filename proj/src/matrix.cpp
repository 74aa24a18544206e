#include "orthokit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthokit/error.hpp"

namespace orthokit {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << what << ": non-finite entry at position " << i;
            throw InvalidArgument(msg.str());
        }
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shapes " + a.shape() + " and " + b.shape() +
                             " differ");
    }
}

void require_square(const Matrix& a, const char* op) {
    if (!a.is_square()) {
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + a.shape());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector Vector::from_values(std::vector<double> values) {
    require_finite(values, "Vector");
    return Vector(std::move(values));
}

Vector Vector::unit(std::size_t size, std::size_t index) {
    if (index >= size) {
        throw InvalidArgument("Vector::unit: index out of range");
    }
    Vector e(size);
    e[index] = 1.0;
    return e;
}

Vector Vector::segment(std::size_t offset, std::size_t count) const {
    if (offset + count > size()) {
        throw DimensionError("Vector::segment: range exceeds vector length");
    }
    return Vector(std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(offset),
                                      data_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("Matrix: all rows must have the same length");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::from_row_major(std::size_t rows, std::size_t cols, std::vector<double> values) {
    if (values.size() != rows * cols) {
        std::ostringstream msg;
        msg << "Matrix: " << values.size() << " entries do not fill a " << rows << "x" << cols
            << " matrix";
        throw DimensionError(msg.str());
    }
    require_finite(values, "Matrix");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(values);
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

Matrix Matrix::column(const Vector& v) {
    return from_row_major(v.size(), 1, v.values());
}

Matrix Matrix::row(const Vector& v) {
    return from_row_major(1, v.size(), v.values());
}

Vector Matrix::get_row(std::size_t i) const {
    auto r = row_span(i);
    return Vector(std::vector<double>(r.begin(), r.end()));
}

Vector Matrix::get_column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
    if (v.size() != rows_ || j >= cols_) {
        throw DimensionError("Matrix::set_column: vector length or column index mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = v[i];
    }
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        std::ostringstream msg;
        msg << "Matrix::block: " << nr << "x" << nc << " block at (" << r0 << "," << c0
            << ") exceeds " << shape();
        throw DimensionError(msg.str());
    }
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            out(i, j) = (*this)(r0 + i, c0 + j);
        }
    }
    return out;
}

std::string Matrix::shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

// ---------------------------------------------------------------------------
// Products

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mat_mul: cannot multiply " + a.shape() + " by " + b.shape());
    }
    Matrix c(a.rows(), b.cols());
    // i-k-j order keeps the inner loop on contiguous rows of b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row_span(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            auto brow = b.row_span(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

Matrix transpose_mul(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("transpose_mul: cannot multiply transpose of " + a.shape() + " by " +
                             b.shape());
    }
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto arow = a.row_span(k);
        auto brow = b.row_span(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = arow[i];
            if (aki == 0.0) {
                continue;
            }
            auto crow = c.row_span(i);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                crow[j] += aki * brow[j];
            }
        }
    }
    return c;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw DimensionError("mat_vec: matrix " + a.shape() + " times vector of length " +
                             std::to_string(x.size()));
    }
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        y[i] = dot(a.row_span(i), x.span());
    }
    return y;
}

Vector transpose_vec(const Matrix& a, const Vector& x) {
    if (a.rows() != x.size()) {
        throw DimensionError("transpose_vec: transpose of " + a.shape() +
                             " times vector of length " + std::to_string(x.size()));
    }
    Vector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        auto arow = a.row_span(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            y[j] += arow[j] * xi;
        }
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator+");
    Matrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) {
        cd[i] += bd[i];
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator-");
    Matrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) {
        cd[i] -= bd[i];
    }
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& v : c.data()) {
        v *= s;
    }
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
Vector operator*(const Matrix& a, const Vector& x) { return mat_vec(a, x); }

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("Vector operator+: lengths differ");
    }
    Vector c = a;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] += b[i];
    }
    return c;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("Vector operator-: lengths differ");
    }
    Vector c = a;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] -= b[i];
    }
    return c;
}

Vector operator*(double s, const Vector& v) {
    Vector c = v;
    for (double& x : c) {
        x *= s;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Norms

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("dot: lengths differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> v) {
    double scale = 0.0;
    double ssq = 1.0;
    for (double x : v) {
        if (x == 0.0) {
            continue;
        }
        const double ax = std::abs(x);
        if (scale < ax) {
            ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
            scale = ax;
        } else {
            ssq += (ax / scale) * (ax / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

double norm(const Matrix& a, NormKind kind) {
    switch (kind) {
        case NormKind::frobenius:
            return norm2(a.data());
        case NormKind::inf: {
            double best = 0.0;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                double s = 0.0;
                for (double x : a.row_span(i)) {
                    s += std::abs(x);
                }
                best = std::max(best, s);
            }
            return best;
        }
        case NormKind::one: {
            std::vector<double> sums(a.cols(), 0.0);
            for (std::size_t i = 0; i < a.rows(); ++i) {
                auto r = a.row_span(i);
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    sums[j] += std::abs(r[j]);
                }
            }
            return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
        }
    }
    return 0.0;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double x : a.data()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Triangular solves and Cholesky

namespace {

void check_triangular_system(const Matrix& t, const Vector& b, const char* op) {
    require_square(t, op);
    if (t.rows() != b.size()) {
        throw DimensionError(std::string(op) + ": " + t.shape() +
                             " system with right-hand side of length " + std::to_string(b.size()));
    }
}

[[noreturn]] void throw_singular(const char* op, std::size_t pivot, double value) {
    std::ostringstream msg;
    msg << op << ": singular triangular matrix, pivot " << pivot << " = " << value;
    throw SingularMatrixError(msg.str(), pivot);
}

}  // namespace

Vector back_sub(const Matrix& u, const Vector& b) {
    check_triangular_system(u, b, "back_sub");
    const std::size_t n = u.rows();
    const double tol = 1e-14 * norm(u, NormKind::inf);
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        const double pivot = u(ii, ii);
        if (std::abs(pivot) <= tol || pivot == 0.0) {
            throw_singular("back_sub", ii, pivot);
        }
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            s -= u(ii, j) * x[j];
        }
        x[ii] = s / pivot;
    }
    return x;
}

Vector forward_sub(const Matrix& l, const Vector& b) {
    check_triangular_system(l, b, "forward_sub");
    const std::size_t n = l.rows();
    const double tol = 1e-14 * norm(l, NormKind::inf);
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = l(i, i);
        if (std::abs(pivot) <= tol || pivot == 0.0) {
            throw_singular("forward_sub", i, pivot);
        }
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            s -= l(i, j) * x[j];
        }
        x[i] = s / pivot;
    }
    return x;
}

Matrix cholesky(const Matrix& s) {
    require_square(s, "cholesky");
    const std::size_t n = s.rows();
    const double sym_tol = 1e-12 * norm(s, NormKind::inf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(s(i, j) - s(j, i)) > sym_tol) {
                std::ostringstream msg;
                msg << "cholesky: matrix is not symmetric at (" << i << "," << j << ")";
                throw InvalidArgument(msg.str());
            }
        }
    }
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > 0.0)) {
            std::ostringstream msg;
            msg << "cholesky: matrix is not positive definite, pivot " << j << " = " << d;
            throw NotPositiveDefiniteError(msg.str(), j);
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                v -= l(i, k) * l(j, k);
            }
            l(i, j) = v / ljj;
        }
    }
    return l;
}

}  // namespace orthokit
