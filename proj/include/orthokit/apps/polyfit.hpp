#pragma once

// Least-squares polynomial fitting on a Vandermonde design matrix.

#include <cstddef>

#include "orthokit/matrix.hpp"

namespace orthokit {

struct PolyFit {
    Vector coeffs;  // ascending powers, length degree + 1
    double residual_norm = 0.0;
    double cond = 0.0;  // cond2 of the design matrix
};

// a_kj = t_k^j for j = 0..degree.
[[nodiscard]] Matrix vandermonde(const Vector& t, std::size_t degree);

[[nodiscard]] PolyFit polyfit(const Vector& t, const Vector& y, std::size_t degree);

// Horner evaluation of ascending coefficients.
[[nodiscard]] double polyval(const Vector& coeffs, double t);

}  // namespace orthokit
