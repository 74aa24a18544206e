#include "orthokit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "orthokit/error.hpp"
#include "orthokit/qr.hpp"

namespace orthokit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Columns a, b of m become c m_a + s m_b and -s m_a + c m_b. This is how the
// accumulated factors absorb a rotation applied to B from either side.
void rotate_columns(Matrix& m, std::size_t a, std::size_t b, double c, double s) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double x = m(i, a);
        const double y = m(i, b);
        m(i, a) = c * x + s * y;
        m(i, b) = -s * x + c * y;
    }
}

std::pair<double, double> rotation_or_identity(double x, double y) {
    if (x == 0.0 && y == 0.0) {
        return {1.0, 0.0};
    }
    return givens_params(x, y);
}

// Reflector on x when some entry past the first is nonzero; returns
// nullopt for vectors that are already multiples of e_0.
std::optional<HouseholderReflector> reflector_if_needed(std::span<const double> x) {
    if (std::all_of(x.begin() + 1, x.end(), [](double v) { return v == 0.0; })) {
        return std::nullopt;
    }
    return householder_vector(x);
}

class BidiagonalSolver {
public:
    BidiagonalSolver(const Bidiagonal& b, std::size_t max_sweeps)
        : n_(b.d.size()),
          d_(b.d.values()),
          e_(b.e.values()),
          u_(Matrix::identity(n_)),
          v_(Matrix::identity(n_)),
          max_sweeps_(max_sweeps == 0 ? 30 * std::max<std::size_t>(n_, 1) : max_sweeps) {}

    BidiagonalSvd run() {
        double bnorm = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            bnorm = std::max(bnorm, std::abs(d_[i]));
            if (i + 1 < n_) {
                bnorm = std::max(bnorm, std::abs(e_[i]));
            }
        }
        const double dtol = kEps * bnorm;

        std::size_t sweeps = 0;
        std::size_t hi = n_ == 0 ? 0 : n_ - 1;
        while (true) {
            for (std::size_t i = 0; i + 1 < n_; ++i) {
                if (std::abs(e_[i]) <= kEps * (std::abs(d_[i]) + std::abs(d_[i + 1]))) {
                    e_[i] = 0.0;
                }
            }
            while (hi > 0 && e_[hi - 1] == 0.0) {
                --hi;
            }
            if (hi == 0) {
                break;
            }
            std::size_t lo = hi - 1;
            while (lo > 0 && e_[lo - 1] != 0.0) {
                --lo;
            }

            std::optional<std::size_t> zero;
            for (std::size_t i = lo; i <= hi; ++i) {
                if (std::abs(d_[i]) <= dtol) {
                    d_[i] = 0.0;
                    zero = i;
                    break;
                }
            }
            if (zero) {
                if (*zero < hi) {
                    chase_row(*zero, hi);
                } else {
                    chase_column(lo, hi);
                }
                continue;
            }

            if (sweeps == max_sweeps_) {
                std::ostringstream msg;
                msg << "bidiag_svd: no convergence after " << sweeps << " sweeps ("
                    << (n_ - 1 - hi) << " of " << n_ << " values converged)";
                throw ConvergenceError(msg.str(), sweeps, n_ - 1 - hi);
            }
            golub_kahan_step(lo, hi);
            ++sweeps;
        }

        finish();
        BidiagonalSvd out;
        out.left = std::move(u_);
        out.sigma = Vector(std::move(d_));
        out.right = std::move(v_);
        out.sweeps = sweeps;
        return out;
    }

private:
    // d_i == 0 with i < hi: push e_i along row i with left rotations until it
    // falls off the end of the block.
    void chase_row(std::size_t i, std::size_t hi) {
        double f = e_[i];
        e_[i] = 0.0;
        for (std::size_t j = i + 1; j <= hi && f != 0.0; ++j) {
            auto [c, s] = givens_params(d_[j], f);
            d_[j] = c * d_[j] + s * f;
            rotate_columns(u_, j, i, c, s);
            if (j < hi) {
                f = -s * e_[j];
                e_[j] *= c;
            } else {
                f = 0.0;
            }
        }
    }

    // d_hi == 0: clear column hi with right rotations, moving upwards.
    void chase_column(std::size_t lo, std::size_t hi) {
        double f = e_[hi - 1];
        e_[hi - 1] = 0.0;
        for (std::size_t j = hi; j-- > lo && f != 0.0;) {
            auto [c, s] = givens_params(d_[j], f);
            d_[j] = c * d_[j] + s * f;
            rotate_columns(v_, j, hi, c, s);
            if (j > lo) {
                f = -s * e_[j - 1];
                e_[j - 1] *= c;
            } else {
                f = 0.0;
            }
        }
    }

    // One implicit QR step on the unreduced block [lo, hi] with a Wilkinson
    // shift from the trailing 2x2 of B^T B.
    void golub_kahan_step(std::size_t lo, std::size_t hi) {
        const double dm = d_[hi - 1];
        const double em = e_[hi - 1];
        const double dn = d_[hi];
        const double ep = hi - 1 > lo ? e_[hi - 2] : 0.0;
        const double t11 = dm * dm + ep * ep;
        const double t12 = dm * em;
        const double t22 = dn * dn + em * em;
        const double delta = 0.5 * (t11 - t22);
        const double root = std::hypot(delta, t12);
        const double denom = delta >= 0.0 ? delta + root : delta - root;
        const double mu = denom == 0.0 ? t22 : t22 - t12 * t12 / denom;

        double y = d_[lo] * d_[lo] - mu;
        double z = d_[lo] * e_[lo];
        for (std::size_t k = lo; k < hi; ++k) {
            auto [c, s] = rotation_or_identity(y, z);
            if (k > lo) {
                e_[k - 1] = c * y + s * z;
            }
            const double dk = d_[k];
            const double ek = e_[k];
            const double dk1 = d_[k + 1];
            d_[k] = c * dk + s * ek;
            e_[k] = -s * dk + c * ek;
            double bulge = s * dk1;
            d_[k + 1] = c * dk1;
            rotate_columns(v_, k, k + 1, c, s);

            std::tie(c, s) = rotation_or_identity(d_[k], bulge);
            d_[k] = c * d_[k] + s * bulge;
            const double ek2 = e_[k];
            const double dk2 = d_[k + 1];
            e_[k] = c * ek2 + s * dk2;
            d_[k + 1] = -s * ek2 + c * dk2;
            rotate_columns(u_, k, k + 1, c, s);

            if (k + 1 < hi) {
                const double next = e_[k + 1];
                bulge = s * next;
                e_[k + 1] = c * next;
                y = e_[k];
                z = bulge;
            }
        }
    }

    // Nonnegative values in descending order, factors permuted to match.
    void finish() {
        for (std::size_t i = 0; i < n_; ++i) {
            if (d_[i] < 0.0) {
                d_[i] = -d_[i];
                for (std::size_t r = 0; r < n_; ++r) {
                    v_(r, i) = -v_(r, i);
                }
            }
        }
        std::vector<std::size_t> order(n_);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return d_[a] > d_[b]; });
        std::vector<double> d(n_);
        Matrix u(n_, n_);
        Matrix v(n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            d[j] = d_[order[j]];
            for (std::size_t r = 0; r < n_; ++r) {
                u(r, j) = u_(r, order[j]);
                v(r, j) = v_(r, order[j]);
            }
        }
        d_ = std::move(d);
        u_ = std::move(u);
        v_ = std::move(v);
    }

    std::size_t n_;
    std::vector<double> d_;
    std::vector<double> e_;
    Matrix u_;
    Matrix v_;
    std::size_t max_sweeps_;
};

struct TallSvd {
    Matrix u;  // m x m or m x n
    Vector sigma;
    Matrix v;  // n x n
};

TallSvd svd_tall(const Matrix& a, SvdShape shape) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const Bidiagonalization bd = bidiagonalize(a);
    BidiagonalSvd inner = bidiag_svd(bd.b);

    Matrix u(m, shape == SvdShape::full ? m : n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = inner.left(i, j);
        }
    }
    for (std::size_t i = n; i < u.cols(); ++i) {
        u(i, i) = 1.0;
    }
    for (auto it = bd.left.rbegin(); it != bd.left.rend(); ++it) {
        apply_left_inplace(it->reflector, u, it->offset);
    }
    Matrix v = std::move(inner.right);
    for (auto it = bd.right.rbegin(); it != bd.right.rend(); ++it) {
        apply_left_inplace(it->reflector, v, it->offset);
    }
    return {std::move(u), std::move(inner.sigma), std::move(v)};
}

}  // namespace

Bidiagonalization bidiagonalize(const Matrix& a) {
    if (a.empty()) {
        throw InvalidArgument("bidiagonalize: empty matrix");
    }
    if (a.rows() < a.cols()) {
        throw DimensionError("bidiagonalize: expected rows >= cols, got " + a.shape());
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix work = a;
    Bidiagonalization bd;
    std::vector<double> x;
    for (std::size_t k = 0; k < n; ++k) {
        x.assign(m - k, 0.0);
        for (std::size_t i = k; i < m; ++i) {
            x[i - k] = work(i, k);
        }
        if (auto h = reflector_if_needed(x)) {
            apply_left_inplace(*h, work, k, k + 1);
            work(k, k) = (x[0] < 0.0 ? 1.0 : -1.0) * norm2(x);
            for (std::size_t i = k + 1; i < m; ++i) {
                work(i, k) = 0.0;
            }
            bd.left.push_back({k, std::move(*h)});
        }
        if (k + 2 < n) {
            auto row = work.row_span(k).subspan(k + 1);
            x.assign(row.begin(), row.end());
            if (auto h = reflector_if_needed(x)) {
                apply_right_inplace(work, *h, k + 1, k + 1);
                work(k, k + 1) = (x[0] < 0.0 ? 1.0 : -1.0) * norm2(x);
                for (std::size_t j = k + 2; j < n; ++j) {
                    work(k, j) = 0.0;
                }
                bd.right.push_back({k + 1, std::move(*h)});
            }
        }
    }
    bd.b.d = Vector(n);
    bd.b.e = Vector(n == 0 ? 0 : n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        bd.b.d[k] = work(k, k);
        if (k + 1 < n) {
            bd.b.e[k] = work(k, k + 1);
        }
    }
    return bd;
}

Matrix accumulate_left(const Bidiagonalization& bd, std::size_t m) { return form_q(bd.left, m); }

Matrix accumulate_right(const Bidiagonalization& bd, std::size_t n) {
    return form_q(bd.right, n);
}

Matrix bidiagonal_matrix(const Bidiagonal& b) {
    const std::size_t n = b.d.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = b.d[i];
        if (i + 1 < n) {
            out(i, i + 1) = b.e[i];
        }
    }
    return out;
}

BidiagonalSvd bidiag_svd(const Bidiagonal& b, std::size_t max_sweeps) {
    const std::size_t n = b.d.size();
    if (b.e.size() != (n == 0 ? 0 : n - 1)) {
        throw DimensionError("bidiag_svd: superdiagonal length must be one less than diagonal");
    }
    return BidiagonalSolver(b, max_sweeps).run();
}

SvdFactorization svd(const Matrix& a, SvdShape shape) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);
    SvdFactorization f;
    f.shape = shape;
    if (k == 0) {
        f.u = shape == SvdShape::full ? Matrix::identity(m) : Matrix(m, 0);
        f.vt = shape == SvdShape::full ? Matrix::identity(n) : Matrix(0, n);
        return f;
    }

    if (m >= n) {
        TallSvd t = svd_tall(a, shape);
        f.u = std::move(t.u);
        f.sigma = std::move(t.sigma);
        f.vt = transpose(t.v);
    } else {
        // A^T = U' S V'^T, so A = V' S U'^T.
        TallSvd t = svd_tall(transpose(a), shape);
        f.u = std::move(t.v);
        f.sigma = std::move(t.sigma);
        f.vt = transpose(t.u);
    }

    // Largest-magnitude entry of each right singular vector made positive.
    for (std::size_t j = 0; j < k; ++j) {
        auto row = f.vt.row_span(j);
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::abs(row[i]) > std::abs(row[best])) {
                best = i;
            }
        }
        if (row[best] < 0.0) {
            for (double& x : row) {
                x = -x;
            }
            for (std::size_t i = 0; i < m; ++i) {
                f.u(i, j) = -f.u(i, j);
            }
        }
    }
    return f;
}

Vector singular_values(const Matrix& a) {
    if (std::min(a.rows(), a.cols()) == 0) {
        return {};
    }
    const Matrix tall = a.rows() >= a.cols() ? a : transpose(a);
    return bidiag_svd(bidiagonalize(tall).b).sigma;
}

EigenDecomposition jacobi_eig(const Matrix& s) {
    if (!s.is_square()) {
        throw DimensionError("jacobi_eig: expected a square matrix, got " + s.shape());
    }
    const std::size_t n = s.rows();
    const double fs = frobenius(s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(s(i, j) - s(j, i)) > 1e-10 * std::max(1.0, fs)) {
                throw InvalidArgument("jacobi_eig: matrix is not symmetric");
            }
        }
    }

    Matrix a = s;
    Matrix v = Matrix::identity(n);
    const double threshold = 1e-14 * fs;
    constexpr std::size_t kMaxSweeps = 30;
    std::size_t sweeps = 0;
    bool rotated = true;
    while (rotated) {
        if (sweeps == kMaxSweeps) {
            throw ConvergenceError("jacobi_eig: no convergence after 30 sweeps", sweeps, 0);
        }
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= threshold) {
                    continue;
                }
                rotated = true;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - sn * arq;
                    a(r, q) = sn * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a(p, r);
                    const double aqr = a(q, r);
                    a(p, r) = c * apr - sn * aqr;
                    a(q, r) = sn * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = c * vrp - sn * vrq;
                    v(r, q) = sn * vrp + c * vrq;
                }
            }
        }
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    EigenDecomposition out;
    out.values = Vector(n);
    out.vectors = Matrix(n, n);
    out.sweeps = sweeps;
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, j) = v(r, order[j]);
        }
    }
    return out;
}

double norm2(const Matrix& a) {
    const Vector sigma = singular_values(a);
    return sigma.empty() ? 0.0 : sigma[0];
}

double cond2(const Matrix& a) {
    const Vector sigma = singular_values(a);
    const std::size_t r = sigma.empty() ? 0 : numerical_rank(sigma, rank_tolerance(a));
    if (r == 0) {
        throw RankDeficientError("cond2: matrix has no nonzero singular values");
    }
    return sigma[0] / sigma[r - 1];
}

std::size_t numerical_rank(const Vector& sigma, double threshold) {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] < 0.0 || (i > 0 && sigma[i] > sigma[i - 1])) {
            throw InvalidArgument("numerical_rank: singular values must be nonnegative and "
                                  "nonincreasing");
        }
    }
    return static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > threshold; }));
}

std::size_t numerical_rank(const Matrix& a, int t_digits) {
    const Vector sigma = singular_values(a);
    return numerical_rank(sigma, rank_tolerance(a, t_digits));
}

Matrix pseudoinverse(const SvdFactorization& f, double threshold) {
    const std::size_t m = f.u.rows();
    const std::size_t n = f.vt.cols();
    const std::size_t r = numerical_rank(f.sigma, threshold);
    Matrix out(n, m);
    for (std::size_t j = 0; j < r; ++j) {
        const double inv = 1.0 / f.sigma[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double vij = f.vt(j, i) * inv;
            if (vij == 0.0) {
                continue;
            }
            auto row = out.row_span(i);
            for (std::size_t l = 0; l < m; ++l) {
                row[l] += vij * f.u(l, j);
            }
        }
    }
    return out;
}

Matrix pseudoinverse(const Matrix& a) {
    return pseudoinverse(svd(a, SvdShape::reduced), rank_tolerance(a));
}

Matrix low_rank(const Matrix& a, std::size_t k) {
    const std::size_t kmax = std::min(a.rows(), a.cols());
    if (k < 1 || k > kmax) {
        throw InvalidArgument("low_rank: k = " + std::to_string(k) + " outside [1, " +
                              std::to_string(kmax) + "]");
    }
    const SvdFactorization f = svd(a, SvdShape::reduced);
    Matrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double ui = f.sigma[j] * f.u(i, j);
            if (ui == 0.0) {
                continue;
            }
            auto row = out.row_span(i);
            auto vrow = f.vt.row_span(j);
            for (std::size_t l = 0; l < a.cols(); ++l) {
                row[l] += ui * vrow[l];
            }
        }
    }
    return out;
}

SubspaceBases subspace_bases(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const SvdFactorization f = svd(a, SvdShape::full);
    SubspaceBases out;
    out.rank = f.sigma.empty() ? 0 : numerical_rank(f.sigma, rank_tolerance(a));
    const Matrix v = f.v();
    out.range = f.u.block(0, 0, m, out.rank);
    out.conull = f.u.block(0, out.rank, m, m - out.rank);
    out.corange = v.block(0, 0, n, out.rank);
    out.null = v.block(0, out.rank, n, n - out.rank);
    return out;
}

Matrix nearest_orthogonal(const Matrix& a) {
    if (!a.is_square()) {
        throw DimensionError("nearest_orthogonal: expected a square matrix, got " + a.shape());
    }
    const SvdFactorization f = svd(a, SvdShape::full);
    return mat_mul(f.u, f.vt);
}

SingularDistance distance_to_singular(const Matrix& a) {
    if (!a.is_square() || a.empty()) {
        throw DimensionError("distance_to_singular: expected a nonempty square matrix, got " +
                             a.shape());
    }
    const Vector sigma = singular_values(a);
    if (numerical_rank(sigma, rank_tolerance(a)) < a.rows()) {
        throw RankDeficientError("distance_to_singular: matrix is already numerically singular");
    }
    return {sigma[sigma.size() - 1], sigma[sigma.size() - 1] / sigma[0]};
}

}  // namespace orthokit
