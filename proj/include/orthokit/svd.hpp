#pragma once

// Singular value decomposition by Golub-Kahan bidiagonalization followed by
// implicit-shift QR sweeps on the bidiagonal, plus the quantities derived
// from it. A cyclic Jacobi eigensolver is kept alongside as an independent
// cross-check.

#include <cstddef>
#include <vector>

#include "orthokit/matrix.hpp"
#include "orthokit/reflect.hpp"

namespace orthokit {

enum class SvdShape { full, reduced };

struct SvdFactorization {
    Matrix u;      // m x m (full) or m x k (reduced), k = min(m, n)
    Vector sigma;  // length k, nonincreasing, nonnegative
    Matrix vt;     // n x n (full) or k x n (reduced)
    SvdShape shape = SvdShape::reduced;

    [[nodiscard]] Matrix v() const { return transpose(vt); }
};

struct Bidiagonal {
    Vector d;  // main diagonal, length n
    Vector e;  // superdiagonal, length n - 1 (empty when n == 0)
};

struct Bidiagonalization {
    std::vector<HouseholderStep> left;   // act on rows of A
    Bidiagonal b;
    std::vector<HouseholderStep> right;  // act on columns of A
};

// H_n ... H_1 A G_1 ... G_{n-2} = [B; 0] for m >= n.
[[nodiscard]] Bidiagonalization bidiagonalize(const Matrix& a);

// Dense U_acc (m x m) and V_acc (n x n) with A = U_acc [B; 0] V_acc^T.
[[nodiscard]] Matrix accumulate_left(const Bidiagonalization& bd, std::size_t m);
[[nodiscard]] Matrix accumulate_right(const Bidiagonalization& bd, std::size_t n);
[[nodiscard]] Matrix bidiagonal_matrix(const Bidiagonal& b);

struct BidiagonalSvd {
    Matrix left;   // n x n, B = left diag(sigma) right^T
    Vector sigma;  // descending, nonnegative
    Matrix right;  // n x n
    std::size_t sweeps = 0;
};

// max_sweeps == 0 selects the default 30 n. Throws ConvergenceError with the
// number of converged trailing values when the budget runs out.
[[nodiscard]] BidiagonalSvd bidiag_svd(const Bidiagonal& b, std::size_t max_sweeps = 0);

[[nodiscard]] SvdFactorization svd(const Matrix& a, SvdShape shape = SvdShape::reduced);
[[nodiscard]] Vector singular_values(const Matrix& a);

struct EigenDecomposition {
    Vector values;   // descending
    Matrix vectors;  // column i pairs with values[i]
    std::size_t sweeps = 0;
};

// Cyclic-by-row Jacobi for symmetric S.
[[nodiscard]] EigenDecomposition jacobi_eig(const Matrix& s);

[[nodiscard]] double norm2(const Matrix& a);
// sigma_1 / sigma_r with r the numerical rank; RankDeficientError for a zero
// matrix.
[[nodiscard]] double cond2(const Matrix& a);

// Count of sigma_i > threshold; sigma must be nonincreasing and nonnegative.
[[nodiscard]] std::size_t numerical_rank(const Vector& sigma, double threshold);
// Threshold 10^-t_digits * ||A||_inf.
[[nodiscard]] std::size_t numerical_rank(const Matrix& a, int t_digits = 12);

// V_1 Sigma_1^-1 U_1^T at the numerical rank.
[[nodiscard]] Matrix pseudoinverse(const Matrix& a);
// Same product from given factors; singular values <= threshold are dropped.
[[nodiscard]] Matrix pseudoinverse(const SvdFactorization& f, double threshold);

// Truncated SVD sum_{j<=k} sigma_j u_j v_j^T, 1 <= k <= min(m, n).
[[nodiscard]] Matrix low_rank(const Matrix& a, std::size_t k);

struct SubspaceBases {
    std::size_t rank = 0;
    Matrix range;    // U_1, m x r
    Matrix conull;   // U_2, m x (m - r), null space of A^T
    Matrix corange;  // V_1, n x r, range of A^T
    Matrix null;     // V_2, n x (n - r)
};

[[nodiscard]] SubspaceBases subspace_bases(const Matrix& a);

// U V^T, the orthogonal matrix closest to square A in Frobenius norm.
[[nodiscard]] Matrix nearest_orthogonal(const Matrix& a);

struct SingularDistance {
    double absolute = 0.0;  // sigma_n
    double relative = 0.0;  // sigma_n / sigma_1 = 1 / cond2
};

[[nodiscard]] SingularDistance distance_to_singular(const Matrix& a);

}  // namespace orthokit
