#include "orthokit/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "orthokit/error.hpp"

namespace orthokit {

namespace {

void require_nonempty(const Matrix& a, const char* op) {
    if (a.empty()) {
        throw InvalidArgument(std::string(op) + ": empty matrix");
    }
}

// Reflects column k of `work` onto e_k, rows k and below, and updates the
// columns to its right. The tail of u is written below the diagonal when
// `store` is set, exact zeros otherwise. Returns u_0, or 0 when the column
// already had zeros below the diagonal and no reflection was needed.
double householder_step(Matrix& work, std::size_t k, bool store) {
    const std::size_t m = work.rows();
    std::vector<double> x(m - k);
    bool tail_zero = true;
    for (std::size_t i = k; i < m; ++i) {
        x[i - k] = work(i, k);
        if (i > k && x[i - k] != 0.0) {
            tail_zero = false;
        }
    }
    if (tail_zero) {
        return 0.0;
    }
    HouseholderReflector h = householder_vector(x);
    if (k + 1 < work.cols()) {
        apply_left_inplace(h, work, k, k + 1);
    }
    const double sign = x[0] < 0.0 ? -1.0 : 1.0;
    work(k, k) = -sign * norm2(x);
    for (std::size_t i = k + 1; i < m; ++i) {
        work(i, k) = store ? h.u[i - k] : 0.0;
    }
    return h.u[0];
}

Matrix upper_part(const Matrix& work) {
    Matrix r = work;
    for (std::size_t i = 1; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < std::min(i, r.cols()); ++j) {
            r(i, j) = 0.0;
        }
    }
    return r;
}

Matrix q_from_rotations(std::span<const GivensRotation> rotations, std::size_t m) {
    Matrix qt = Matrix::identity(m);
    for (const auto& g : rotations) {
        givens_apply_inplace(g, qt);
    }
    return transpose(qt);
}

}  // namespace

std::vector<HouseholderStep> QrFactorization::reflectors() const {
    std::vector<HouseholderStep> steps;
    if (!packed) {
        return steps;
    }
    const Matrix& p = *packed;
    const std::size_t m = p.rows();
    for (std::size_t k = 0; k < u_leading.size(); ++k) {
        if (u_leading[k] == 0.0) {
            continue;
        }
        std::vector<double> u(m - k);
        u[0] = u_leading[k];
        for (std::size_t i = k + 1; i < m; ++i) {
            u[i - k] = p(i, k);
        }
        const double uu = dot(u, u);
        steps.push_back({k, {Vector(std::move(u)), 2.0 / uu}});
    }
    return steps;
}

Matrix QrFactorization::q_matrix() const {
    if (q) {
        return *q;
    }
    if (packed) {
        return form_q(reflectors(), r.rows());
    }
    if (!rotations.empty()) {
        return q_from_rotations(rotations, r.rows());
    }
    throw InvalidArgument("qr: Q is not available from an R-only factorization");
}

Matrix form_q(std::span<const HouseholderStep> steps, std::size_t m) {
    Matrix q = Matrix::identity(m);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (it->offset + it->reflector.size() != m) {
            std::ostringstream msg;
            msg << "form_q: reflector at offset " << it->offset << " has length "
                << it->reflector.size() << ", expected " << (m - std::min(m, it->offset));
            throw DimensionError(msg.str());
        }
        apply_left_inplace(it->reflector, q, it->offset, 0);
    }
    return q;
}

Vector apply_qt(const QrFactorization& f, const Vector& b) {
    if (b.size() != f.r.rows()) {
        throw DimensionError("apply_qt: vector of length " + std::to_string(b.size()) +
                             " for a factorization with " + std::to_string(f.r.rows()) + " rows");
    }
    if (f.packed) {
        Matrix y = Matrix::column(b);
        for (const auto& step : f.reflectors()) {
            apply_left_inplace(step.reflector, y, step.offset, 0);
        }
        return y.get_column(0);
    }
    if (!f.rotations.empty()) {
        Matrix y = Matrix::column(b);
        for (const auto& g : f.rotations) {
            givens_apply_inplace(g, y);
        }
        return y.get_column(0);
    }
    if (f.q) {
        return transpose_vec(*f.q, b);
    }
    throw InvalidArgument("apply_qt: factorization carries no Q information");
}

QrFactorization qr_householder(const Matrix& a, QrMode mode) {
    require_nonempty(a, "qr_householder");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t steps = std::min(m - 1, n);
    const bool keep = mode != QrMode::r_only;

    Matrix work = a;
    std::vector<double> lead(steps, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        lead[k] = householder_step(work, k, keep);
    }

    QrFactorization f;
    f.r = upper_part(work);
    if (keep) {
        f.packed = std::move(work);
        f.u_leading = std::move(lead);
    }
    if (mode == QrMode::q_and_r) {
        f.q = form_q(f.reflectors(), m);
    }
    return f;
}

QrFactorization qr_givens(const Matrix& a) {
    require_nonempty(a, "qr_givens");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t steps = std::min(m - 1, n);

    QrFactorization f;
    Matrix work = a;
    for (std::size_t k = 0; k < steps; ++k) {
        for (std::size_t i = m - 1; i > k; --i) {
            if (work(i, k) == 0.0) {
                continue;
            }
            auto [c, s] = givens_params(work(k, k), work(i, k));
            GivensRotation g{c, s, k, i};
            givens_apply_inplace(g, work, k);
            work(i, k) = 0.0;
            f.rotations.push_back(g);
        }
    }
    f.r = upper_part(work);
    f.q = q_from_rotations(f.rotations, m);
    return f;
}

QrFactorization qr_hessenberg(const Matrix& h) {
    require_nonempty(h, "qr_hessenberg");
    if (!h.is_square()) {
        throw DimensionError("qr_hessenberg: expected a square matrix, got " + h.shape());
    }
    const std::size_t n = h.rows();
    for (std::size_t i = 2; i < n; ++i) {
        for (std::size_t j = 0; j + 1 < i; ++j) {
            if (h(i, j) != 0.0) {
                std::ostringstream msg;
                msg << "qr_hessenberg: not upper Hessenberg, entry (" << i << "," << j
                    << ") = " << h(i, j);
                throw InvalidArgument(msg.str());
            }
        }
    }

    QrFactorization f;
    Matrix work = h;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        GivensRotation g{1.0, 0.0, k, k + 1};
        if (work(k, k) != 0.0 || work(k + 1, k) != 0.0) {
            std::tie(g.c, g.s) = givens_params(work(k, k), work(k + 1, k));
            givens_apply_inplace(g, work, k);
        }
        work(k + 1, k) = 0.0;
        f.rotations.push_back(g);
    }
    f.r = std::move(work);
    f.q = q_from_rotations(f.rotations, n);
    return f;
}

double rank_tolerance(const Matrix& a, int t_digits) {
    if (t_digits < 1) {
        throw InvalidArgument("rank tolerance: t_digits must be at least 1");
    }
    return std::pow(10.0, -t_digits) * norm(a, NormKind::inf);
}

QrFactorization qr_pivoted(const Matrix& a, int t_digits, const PivotTrace& trace) {
    require_nonempty(a, "qr_pivoted");
    const double delta = rank_tolerance(a, t_digits);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t steps = std::min(m, n);

    Matrix work = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    auto fresh_norm_sq = [&](std::size_t j, std::size_t from) {
        double s = 0.0;
        for (std::size_t i = from; i < m; ++i) {
            s += work(i, j) * work(i, j);
        }
        return s;
    };
    std::vector<double> kappa(n);
    std::vector<double> reference(n);
    for (std::size_t j = 0; j < n; ++j) {
        kappa[j] = fresh_norm_sq(j, 0);
        reference[j] = kappa[j];
    }

    std::optional<std::size_t> rank;
    std::vector<double> lead(std::min(m - 1, n), 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t p = k;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (kappa[j] > kappa[p]) {
                p = j;
            }
        }
        if (!rank && std::sqrt(std::max(kappa[p], 0.0)) <= delta) {
            rank = k;
        }
        if (p != k) {
            for (std::size_t i = 0; i < m; ++i) {
                std::swap(work(i, k), work(i, p));
            }
            std::swap(kappa[k], kappa[p]);
            std::swap(reference[k], reference[p]);
            std::swap(perm[k], perm[p]);
        }
        if (k + 1 < m) {
            lead[k] = householder_step(work, k, true);
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            kappa[j] -= work(k, j) * work(k, j);
            if (kappa[j] < 1e-8 * reference[j]) {
                kappa[j] = fresh_norm_sq(j, k + 1);
                reference[j] = kappa[j];
            }
        }
        if (trace) {
            trace(k, kappa, work);
        }
    }

    QrFactorization f;
    f.r = upper_part(work);
    f.packed = std::move(work);
    f.u_leading = std::move(lead);
    f.perm = std::move(perm);
    f.rank = rank.value_or(steps);
    return f;
}

Matrix permutation_matrix(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] >= n) {
            throw InvalidArgument("permutation_matrix: index out of range");
        }
        p(perm[i], i) = 1.0;
    }
    return p;
}

}  // namespace orthokit
