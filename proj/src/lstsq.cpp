#include "orthokit/lstsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orthokit/error.hpp"
#include "orthokit/qr.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

namespace {

void check_system(const Matrix& a, const Vector& b, const char* op) {
    if (a.empty()) {
        throw InvalidArgument(std::string(op) + ": empty matrix");
    }
    if (a.rows() != b.size()) {
        throw DimensionError(std::string(op) + ": matrix " + a.shape() +
                             " and right-hand side of length " + std::to_string(b.size()));
    }
}

double residual(const Matrix& a, const Vector& x, const Vector& b) {
    return norm2(b - mat_vec(a, x));
}

double tail_norm(const Vector& c, std::size_t from) {
    return from >= c.size() ? 0.0 : norm2(c.span().subspan(from));
}

}  // namespace

std::string_view to_string(LstsqMethod method) noexcept {
    switch (method) {
        case LstsqMethod::normal:
            return "normal";
        case LstsqMethod::qr:
            return "qr";
        case LstsqMethod::qr_pivoted:
            return "qr-pivoted";
        case LstsqMethod::svd:
            return "svd";
    }
    return "unknown";
}

LeastSquaresSolution solve_normal(const Matrix& a, const Vector& b) {
    check_system(a, b, "solve_normal");
    const Matrix ata = transpose_mul(a, a);
    const Vector atb = transpose_vec(a, b);
    Matrix l;
    try {
        l = cholesky(ata);
    } catch (const NotPositiveDefiniteError& e) {
        throw RankDeficientError(
            "solve_normal: A^T A is not numerically positive definite (pivot " +
            std::to_string(e.index()) + "); use the qr-pivoted or svd method");
    }
    LeastSquaresSolution sol;
    sol.x = back_sub(transpose(l), forward_sub(l, atb));
    sol.residual_norm = residual(a, sol.x, b);
    sol.method = LstsqMethod::normal;
    sol.rank = a.cols();
    return sol;
}

LeastSquaresSolution solve_qr(const Matrix& a, const Vector& b) {
    check_system(a, b, "solve_qr");
    const std::size_t n = a.cols();
    if (a.rows() < n) {
        throw RankDeficientError("solve_qr: " + a.shape() +
                                 " cannot have full column rank; use the svd method");
    }
    const QrFactorization f = qr_householder(a, QrMode::r_and_reflectors);
    const double tol = 1e-12 * norm(a, NormKind::inf);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(f.r(i, i)) > tol)) {
            throw RankDeficientError("solve_qr: |R(" + std::to_string(i) + "," +
                                     std::to_string(i) +
                                     ")| is below 1e-12 ||A||_inf; use the qr-pivoted or svd "
                                     "method");
        }
    }
    const Vector c = apply_qt(f, b);
    LeastSquaresSolution sol;
    sol.x = back_sub(f.r.block(0, 0, n, n), c.segment(0, n));
    sol.residual_norm = tail_norm(c, n);
    sol.method = LstsqMethod::qr;
    sol.rank = n;
    return sol;
}

LeastSquaresSolution solve_qr_pivoted(const Matrix& a, const Vector& b,
                                      const std::optional<Vector>& y_hat, int t_digits) {
    check_system(a, b, "solve_qr_pivoted");
    const std::size_t n = a.cols();
    const QrFactorization f = qr_pivoted(a, t_digits);
    const std::size_t r = *f.rank;
    if (y_hat && y_hat->size() != n - r) {
        throw DimensionError("solve_qr_pivoted: y_hat has length " + std::to_string(y_hat->size()) +
                             ", expected n - rank = " + std::to_string(n - r));
    }
    const Vector c = apply_qt(f, b);

    Vector z(n);
    if (y_hat) {
        for (std::size_t i = 0; i < n - r; ++i) {
            z[r + i] = (*y_hat)[i];
        }
    }
    if (r > 0) {
        Vector rhs = c.segment(0, r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = r; j < n; ++j) {
                rhs[i] -= f.r(i, j) * z[j];
            }
        }
        const Vector y = back_sub(f.r.block(0, 0, r, r), rhs);
        for (std::size_t i = 0; i < r; ++i) {
            z[i] = y[i];
        }
    }

    LeastSquaresSolution sol;
    sol.x = Vector(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.x[(*f.perm)[i]] = z[i];
    }
    sol.residual_norm = tail_norm(c, r);
    sol.method = LstsqMethod::qr_pivoted;
    sol.rank = r;
    sol.free_params = n - r;
    return sol;
}

LeastSquaresSolution solve_svd(const Matrix& a, const Vector& b) {
    check_system(a, b, "solve_svd");
    const SvdFactorization f = svd(a, SvdShape::reduced);
    const std::size_t r = numerical_rank(f.sigma, rank_tolerance(a));
    LeastSquaresSolution sol;
    sol.x = Vector(a.cols());
    for (std::size_t j = 0; j < r; ++j) {
        double coef = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            coef += f.u(i, j) * b[i];
        }
        coef /= f.sigma[j];
        auto vrow = f.vt.row_span(j);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            sol.x[i] += coef * vrow[i];
        }
    }
    sol.residual_norm = residual(a, sol.x, b);
    sol.method = LstsqMethod::svd;
    sol.rank = r;
    sol.free_params = a.cols() - r;
    return sol;
}

LeastSquaresSolution solve(const Matrix& a, const Vector& b) {
    check_system(a, b, "solve");
    if (numerical_rank(a) == a.cols()) {
        try {
            return solve_qr(a, b);
        } catch (const RankDeficientError&) {
        }
    }
    return solve_svd(a, b);
}

ConditioningReport conditioning_report(const Matrix& a, const Vector& b, const Vector& x,
                                       double eps_a) {
    check_system(a, b, "conditioning_report");
    const double nb = norm2(b);
    if (nb == 0.0) {
        throw InvalidArgument("conditioning_report: right-hand side is zero");
    }
    ConditioningReport rep;
    rep.cond = cond2(a);
    rep.cos_theta = std::clamp(norm2(mat_vec(a, x)) / nb, 0.0, 1.0);
    rep.theta = std::acos(rep.cos_theta);
    rep.rhs_sensitivity_bound = rep.cos_theta == 0.0 ? std::numeric_limits<double>::infinity()
                                                     : rep.cond / rep.cos_theta;
    rep.matrix_sensitivity_bound =
        (rep.cond * rep.cond * std::tan(rep.theta) + rep.cond) * eps_a;
    return rep;
}

}  // namespace orthokit
