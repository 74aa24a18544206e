#pragma once

// Projector predicates and constructions.

#include <utility>

#include "orthokit/matrix.hpp"

namespace orthokit {

struct ProjectorCheck {
    bool ok = false;
    // ||P^2 - P||_F (and ||P - P^T||_F for the orthogonal check).
    double idempotency_defect = 0.0;
    double symmetry_defect = 0.0;
};

// P^2 = P within tol (Frobenius).
[[nodiscard]] ProjectorCheck is_projector(const Matrix& p, double tol);
// Default tolerance 1e-11 (1 + ||P||_F^2); the defect is quadratic in P.
[[nodiscard]] ProjectorCheck is_projector(const Matrix& p);
// Projector that is also symmetric within 1e-12 ||P||_F.
[[nodiscard]] ProjectorCheck is_orthogonal_projector(const Matrix& p);

// I - P.
[[nodiscard]] Matrix complement(const Matrix& p);

// A (A^T A)^-1 A^T for full column rank A, built as Q1 Q1^T from a
// Householder QR. Rank-deficient input raises RankDeficientError.
[[nodiscard]] Matrix projector_onto_range(const Matrix& a);

// Q1 Q1^T for a matrix with orthonormal columns.
[[nodiscard]] Matrix projector_from_orthonormal(const Matrix& q1);

// (P b, (I - P) b).
[[nodiscard]] std::pair<Vector, Vector> split(const Vector& b, const Matrix& p);

}  // namespace orthokit
