#pragma once

// Least-squares solvers for A x ~ b and conditioning diagnostics.

#include <cstddef>
#include <optional>
#include <string_view>

#include "orthokit/matrix.hpp"

namespace orthokit {

enum class LstsqMethod { normal, qr, qr_pivoted, svd };

[[nodiscard]] std::string_view to_string(LstsqMethod method) noexcept;

struct LeastSquaresSolution {
    Vector x;
    double residual_norm = 0.0;
    LstsqMethod method = LstsqMethod::qr;
    std::size_t rank = 0;
    // n - rank on the rank-deficient paths.
    std::optional<std::size_t> free_params;
};

// Cholesky on A^T A. Fails with RankDeficientError when A^T A is not
// numerically positive definite.
[[nodiscard]] LeastSquaresSolution solve_normal(const Matrix& a, const Vector& b);

// Householder QR, R_1 x = Q_1^T b. Requires |r_ii| > 1e-12 ||A||_inf.
[[nodiscard]] LeastSquaresSolution solve_qr(const Matrix& a, const Vector& b);

// Column-pivoted QR at the detected rank r: R_11 y = Q_1^T b - R_12 y_hat,
// x = P [y; y_hat]. y_hat has length n - r and defaults to zero.
[[nodiscard]] LeastSquaresSolution solve_qr_pivoted(const Matrix& a, const Vector& b,
                                                    const std::optional<Vector>& y_hat = {},
                                                    int t_digits = 12);

// Norm-minimal solution sum_{j<=r} (u_j^T b / sigma_j) v_j.
[[nodiscard]] LeastSquaresSolution solve_svd(const Matrix& a, const Vector& b);

// qr when the numerical rank equals the column count, svd otherwise.
[[nodiscard]] LeastSquaresSolution solve(const Matrix& a, const Vector& b);

struct ConditioningReport {
    double cond = 0.0;
    double cos_theta = 0.0;  // ||A x|| / ||b||, clamped to [0, 1]
    double theta = 0.0;
    double rhs_sensitivity_bound = 0.0;     // cond / cos(theta)
    double matrix_sensitivity_bound = 0.0;  // (cond^2 tan(theta) + cond) eps_a
};

[[nodiscard]] ConditioningReport conditioning_report(const Matrix& a, const Vector& b,
                                                     const Vector& x, double eps_a);

}  // namespace orthokit
