#pragma once

// Householder reflectors and Givens plane rotations, applied implicitly.

#include <cstddef>
#include <span>
#include <utility>

#include "orthokit/matrix.hpp"

namespace orthokit {

// H = I - beta * u u^T with beta = 2 / (u^T u). Never materialized.
struct HouseholderReflector {
    Vector u;
    double beta = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return u.size(); }
};

// A reflector acting on rows (or columns) [offset, offset + u.size()) of a
// larger matrix; the identity elsewhere.
struct HouseholderStep {
    std::size_t offset = 0;
    HouseholderReflector reflector;
};

// Rotation in the (j, k) plane, j < k:
//   row_j <- c row_j + s row_k,  row_k <- -s row_j + c row_k.
struct GivensRotation {
    double c = 1.0;
    double s = 0.0;
    std::size_t j = 0;
    std::size_t k = 1;
};

// Reflector mapping x to -sign(x_0) ||x|| e_0, with sign(0) = +.
// Throws InvalidArgument for a zero vector.
[[nodiscard]] HouseholderReflector householder_vector(std::span<const double> x);

// H A and A H, computed as A - beta u (u^T A) and A - beta (A u) u^T.
[[nodiscard]] Matrix householder_apply_left(const HouseholderReflector& h, const Matrix& a);
[[nodiscard]] Matrix householder_apply_right(const Matrix& a, const HouseholderReflector& h);
[[nodiscard]] Vector householder_apply(const HouseholderReflector& h, const Vector& x);

// Dense I - beta u u^T, for tests and small examples.
[[nodiscard]] Matrix householder_dense(const HouseholderReflector& h);

// In-place kernels used by the factorizations. The reflector acts on rows
// [row0, row0 + h.size()) and touches only columns >= col0 (left), or on
// columns [col0, col0 + h.size()) of rows >= row0 (right).
void apply_left_inplace(const HouseholderReflector& h, Matrix& a, std::size_t row0,
                        std::size_t col0 = 0);
void apply_right_inplace(Matrix& a, const HouseholderReflector& h, std::size_t col0,
                         std::size_t row0 = 0);

// (c, s) with -s x + c y = 0 and c x + s y = +-sqrt(x^2 + y^2), computed
// from a ratio of magnitude <= 1 so nothing overflows or underflows.
// Throws InvalidArgument when both are zero.
[[nodiscard]] std::pair<double, double> givens_params(double x, double y);

[[nodiscard]] Matrix givens_apply(const GivensRotation& g, const Matrix& a);
// Rotates rows g.j and g.k of `a` in place, columns >= col0 only.
void givens_apply_inplace(const GivensRotation& g, Matrix& a, std::size_t col0 = 0);

}  // namespace orthokit
