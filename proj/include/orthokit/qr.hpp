#pragma once

// QR factorizations: Householder (three output modes), Givens, the
// Hessenberg fast path and column-pivoted QR with numerical rank.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "orthokit/matrix.hpp"
#include "orthokit/reflect.hpp"

namespace orthokit {

enum class QrMode { r_only, r_and_reflectors, q_and_r };

struct QrFactorization {
    // m x n, upper triangular (trapezoidal when m < n), exact zeros below.
    Matrix r;
    // m x m orthogonal factor, when requested or cheap to produce.
    std::optional<Matrix> q;
    // Householder form: R over the upper triangle, reflector tails below the
    // diagonal, leading components in u_leading. A zero leading component
    // marks a skipped (identity) step.
    std::optional<Matrix> packed;
    std::vector<double> u_leading;
    // Givens form, in application order: R = G_N ... G_1 A.
    std::vector<GivensRotation> rotations;
    // Column permutation: column i of A P is column perm[i] of A.
    std::optional<std::vector<std::size_t>> perm;
    std::optional<std::size_t> rank;

    // Reflectors recovered from the packed form, identity steps omitted.
    [[nodiscard]] std::vector<HouseholderStep> reflectors() const;
    // Explicit Q: stored, or formed from reflectors or rotations.
    [[nodiscard]] Matrix q_matrix() const;
};

[[nodiscard]] QrFactorization qr_householder(const Matrix& a, QrMode mode = QrMode::q_and_r);

// Q = H_1 H_2 ... H_s, accumulated backwards onto the m x m identity.
[[nodiscard]] Matrix form_q(std::span<const HouseholderStep> steps, std::size_t m);

// Q^T b without forming Q.
[[nodiscard]] Vector apply_qt(const QrFactorization& f, const Vector& b);

[[nodiscard]] QrFactorization qr_givens(const Matrix& a);

// Upper-Hessenberg input, exactly n - 1 rotations (identity ones included).
[[nodiscard]] QrFactorization qr_hessenberg(const Matrix& h);

// Called after each pivoted step k with the downdated squared column norms
// (indexed by current column position) and the working matrix.
using PivotTrace =
    std::function<void(std::size_t step, std::span<const double> norms_sq, const Matrix& work)>;

// A P = Q R with greedy max-norm pivoting. The rank is the number of steps
// taken before the largest remaining column norm drops to
// 10^-t_digits * ||A||_inf or below.
[[nodiscard]] QrFactorization qr_pivoted(const Matrix& a, int t_digits = 12,
                                         const PivotTrace& trace = {});

// Rank threshold 10^-t_digits * ||A||_inf.
[[nodiscard]] double rank_tolerance(const Matrix& a, int t_digits = 12);

// Column permutation matrix P with (A P)(:, i) = A(:, perm[i]).
[[nodiscard]] Matrix permutation_matrix(std::span<const std::size_t> perm);

}  // namespace orthokit
