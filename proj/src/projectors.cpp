#include "orthokit/projectors.hpp"

#include <cmath>

#include "orthokit/error.hpp"
#include "orthokit/qr.hpp"

namespace orthokit {

namespace {

void require_square(const Matrix& p, const char* op) {
    if (!p.is_square()) {
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + p.shape());
    }
}

}  // namespace

ProjectorCheck is_projector(const Matrix& p, double tol) {
    require_square(p, "is_projector");
    ProjectorCheck check;
    check.idempotency_defect = frobenius(p * p - p);
    check.symmetry_defect = frobenius(p - transpose(p));
    check.ok = check.idempotency_defect <= tol;
    return check;
}

ProjectorCheck is_projector(const Matrix& p) {
    const double fp = frobenius(p);
    return is_projector(p, 1e-11 * (1.0 + fp * fp));
}

ProjectorCheck is_orthogonal_projector(const Matrix& p) {
    ProjectorCheck check = is_projector(p);
    check.ok = check.ok && check.symmetry_defect <= 1e-12 * frobenius(p);
    return check;
}

Matrix complement(const Matrix& p) {
    require_square(p, "complement");
    return Matrix::identity(p.rows()) - p;
}

Matrix projector_onto_range(const Matrix& a) {
    if (a.empty()) {
        throw InvalidArgument("projector_onto_range: empty matrix");
    }
    if (a.cols() > a.rows()) {
        throw RankDeficientError("projector_onto_range: " + a.shape() +
                                 " cannot have full column rank; use the SVD range basis");
    }
    const QrFactorization piv = qr_pivoted(a);
    if (*piv.rank < a.cols()) {
        throw RankDeficientError("projector_onto_range: rank " + std::to_string(*piv.rank) +
                                 " < " + std::to_string(a.cols()) +
                                 " columns; use the SVD range basis instead");
    }
    const Matrix q = qr_householder(a, QrMode::q_and_r).q_matrix();
    const Matrix q1 = q.left_columns(a.cols());
    Matrix p = mat_mul(q1, transpose(q1));
    // Exactly symmetric.
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double avg = 0.5 * (p(i, j) + p(j, i));
            p(i, j) = avg;
            p(j, i) = avg;
        }
    }
    return p;
}

Matrix projector_from_orthonormal(const Matrix& q1) {
    const Matrix gram = transpose_mul(q1, q1);
    const double defect = frobenius(gram - Matrix::identity(q1.cols()));
    if (defect > 1e-10) {
        throw InvalidArgument("projector_from_orthonormal: columns are not orthonormal (defect " +
                              std::to_string(defect) + ")");
    }
    return mat_mul(q1, transpose(q1));
}

std::pair<Vector, Vector> split(const Vector& b, const Matrix& p) {
    require_square(p, "split");
    if (p.rows() != b.size()) {
        throw DimensionError("split: projector " + p.shape() + " and vector of length " +
                             std::to_string(b.size()));
    }
    Vector pb = mat_vec(p, b);
    Vector rest = mat_vec(complement(p), b);
    return {std::move(pb), std::move(rest)};
}

}  // namespace orthokit
