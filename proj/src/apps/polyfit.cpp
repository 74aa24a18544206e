#include "orthokit/apps/polyfit.hpp"

#include <algorithm>
#include <vector>

#include "orthokit/error.hpp"
#include "orthokit/lstsq.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

Matrix vandermonde(const Vector& t, std::size_t degree) {
    Matrix a(t.size(), degree + 1);
    for (std::size_t k = 0; k < t.size(); ++k) {
        double p = 1.0;
        for (std::size_t j = 0; j <= degree; ++j) {
            a(k, j) = p;
            p *= t[k];
        }
    }
    return a;
}

PolyFit polyfit(const Vector& t, const Vector& y, std::size_t degree) {
    if (t.size() != y.size()) {
        throw DimensionError("polyfit: " + std::to_string(t.size()) + " nodes but " +
                             std::to_string(y.size()) + " values");
    }
    if (degree + 1 > t.size()) {
        throw InvalidArgument("polyfit: degree " + std::to_string(degree) + " needs at least " +
                              std::to_string(degree + 1) + " samples, got " +
                              std::to_string(t.size()));
    }
    std::vector<double> nodes(t.begin(), t.end());
    std::sort(nodes.begin(), nodes.end());
    const auto distinct =
        static_cast<std::size_t>(std::unique(nodes.begin(), nodes.end()) - nodes.begin());
    if (distinct < degree + 1) {
        throw InvalidArgument("polyfit: only " + std::to_string(distinct) +
                              " distinct nodes for degree " + std::to_string(degree));
    }

    const Matrix a = vandermonde(t, degree);
    const LeastSquaresSolution sol = solve_qr(a, y);
    return {sol.x, sol.residual_norm, cond2(a)};
}

double polyval(const Vector& coeffs, double t) {
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        v = v * t + coeffs[j];
    }
    return v;
}

}  // namespace orthokit
