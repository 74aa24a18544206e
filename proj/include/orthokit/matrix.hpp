#pragma once

// Dense real vectors and matrices, plus the handful of kernels the
// factorizations are built on: products, norms, triangular solves and
// Cholesky.
//
// Storage is row-major. Zero-sized matrices are allowed as values (an empty
// null-space basis is an m x 0 matrix); operations that need data reject
// them explicitly.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orthokit {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t size, double value = 0.0) : data_(size, value) {}
    Vector(std::initializer_list<double> values) : data_(values) {}
    explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

    // Validating constructor for data coming from outside the library.
    static Vector from_values(std::vector<double> values);
    static Vector unit(std::size_t size, std::size_t index);

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i) noexcept { return data_[i]; }
    const double& operator[](std::size_t i) const noexcept { return data_[i]; }

    [[nodiscard]] double* data() noexcept { return data_.data(); }
    [[nodiscard]] const double* data() const noexcept { return data_.data(); }
    [[nodiscard]] auto begin() noexcept { return data_.begin(); }
    [[nodiscard]] auto end() noexcept { return data_.end(); }
    [[nodiscard]] auto begin() const noexcept { return data_.begin(); }
    [[nodiscard]] auto end() const noexcept { return data_.end(); }

    [[nodiscard]] std::span<double> span() noexcept { return data_; }
    [[nodiscard]] std::span<const double> span() const noexcept { return data_; }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_; }

    // Elements [offset, offset + count).
    [[nodiscard]] Vector segment(std::size_t offset, std::size_t count) const;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> data_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}
    // Nested rows; all rows must have equal length.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    // Row-major data from outside the library: length and finiteness checked.
    static Matrix from_row_major(std::size_t rows, std::size_t cols, std::vector<double> values);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);
    // Column vector (n x 1) or row vector (1 x n) views of a Vector, copied.
    static Matrix column(const Vector& v);
    static Matrix row(const Vector& v);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<double> row_span(std::size_t i) noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> row_span(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] Vector get_row(std::size_t i) const;
    [[nodiscard]] Vector get_column(std::size_t j) const;
    void set_column(std::size_t j, const Vector& v);

    // Copy of the nr x nc block starting at (r0, c0).
    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    // First `count` columns / rows.
    [[nodiscard]] Matrix left_columns(std::size_t count) const { return block(0, 0, rows_, count); }
    [[nodiscard]] Matrix top_rows(std::size_t count) const { return block(0, 0, count, cols_); }

    // Human-readable shape, e.g. "6x3".
    [[nodiscard]] std::string shape() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class NormKind { frobenius, inf, one };

[[nodiscard]] Matrix mat_mul(const Matrix& a, const Matrix& b);
// A^T B without forming the transpose.
[[nodiscard]] Matrix transpose_mul(const Matrix& a, const Matrix& b);
[[nodiscard]] Vector mat_vec(const Matrix& a, const Vector& x);
// A^T x.
[[nodiscard]] Vector transpose_vec(const Matrix& a, const Vector& x);
[[nodiscard]] Matrix transpose(const Matrix& a);

[[nodiscard]] Matrix operator+(const Matrix& a, const Matrix& b);
[[nodiscard]] Matrix operator-(const Matrix& a, const Matrix& b);
[[nodiscard]] Matrix operator*(double s, const Matrix& a);
[[nodiscard]] Matrix operator*(const Matrix& a, const Matrix& b);
[[nodiscard]] Vector operator*(const Matrix& a, const Vector& x);
[[nodiscard]] Vector operator+(const Vector& a, const Vector& b);
[[nodiscard]] Vector operator-(const Vector& a, const Vector& b);
[[nodiscard]] Vector operator*(double s, const Vector& v);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
// Overflow-safe Euclidean norm (scaled sum of squares).
[[nodiscard]] double norm2(std::span<const double> v);
[[nodiscard]] inline double norm2(const Vector& v) { return norm2(v.span()); }
[[nodiscard]] double norm(const Matrix& a, NormKind kind);
[[nodiscard]] inline double frobenius(const Matrix& a) { return norm(a, NormKind::frobenius); }
[[nodiscard]] double max_abs(const Matrix& a);

// Solve U x = b for upper-triangular U. Pivots with |u_ii| <= 1e-14 * ||U||_inf
// raise SingularMatrixError carrying the pivot index.
[[nodiscard]] Vector back_sub(const Matrix& u, const Vector& b);
// Solve L x = b for lower-triangular L; same pivot rule as back_sub.
[[nodiscard]] Vector forward_sub(const Matrix& l, const Vector& b);

// Lower-triangular L with L L^T = S and positive diagonal. Throws
// NotPositiveDefiniteError at the first non-positive pivot.
[[nodiscard]] Matrix cholesky(const Matrix& s);

}  // namespace orthokit
