#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "orthokit/apps/pca.hpp"
#include "orthokit/error.hpp"
#include "orthokit/lstsq.hpp"
#include "orthokit/projectors.hpp"
#include "orthokit/qr.hpp"
#include "orthokit/svd.hpp"

namespace py = pybind11;
namespace ok = orthokit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ok::Matrix to_matrix(const Array& a) {
    if (a.ndim() != 2) {
        throw ok::DimensionError("expected a 2-d array, got " + std::to_string(a.ndim()) + "-d");
    }
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    return ok::Matrix::from_row_major(rows, cols, std::vector<double>(a.data(), a.data() + a.size()));
}

ok::Vector to_vector(const Array& a) {
    if (a.ndim() != 1) {
        throw ok::DimensionError("expected a 1-d array, got " + std::to_string(a.ndim()) + "-d");
    }
    return ok::Vector::from_values(std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ok::Matrix& m) {
    Array out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

Array to_array(const ok::Vector& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::tuple qr(const Array& a, const std::string& method, int t_digits) {
    const ok::Matrix m = to_matrix(a);
    if (method == "householder") {
        const auto f = ok::qr_householder(m);
        return py::make_tuple(to_array(*f.q), to_array(f.r));
    }
    if (method == "givens") {
        const auto f = ok::qr_givens(m);
        return py::make_tuple(to_array(*f.q), to_array(f.r));
    }
    if (method == "pivoted") {
        const auto f = ok::qr_pivoted(m, t_digits);
        return py::make_tuple(to_array(ok::form_q(f.reflectors(), m.rows())), to_array(f.r),
                              *f.perm, *f.rank);
    }
    throw ok::InvalidArgument("qr: unknown method '" + method + "'");
}

py::dict lstsq(const Array& a, const Array& b, const std::string& method) {
    const ok::Matrix m = to_matrix(a);
    const ok::Vector rhs = to_vector(b);
    ok::LeastSquaresSolution sol;
    if (method == "auto") {
        sol = ok::solve(m, rhs);
    } else if (method == "normal") {
        sol = ok::solve_normal(m, rhs);
    } else if (method == "qr") {
        sol = ok::solve_qr(m, rhs);
    } else if (method == "qr-pivoted") {
        sol = ok::solve_qr_pivoted(m, rhs);
    } else if (method == "svd") {
        sol = ok::solve_svd(m, rhs);
    } else {
        throw ok::InvalidArgument("lstsq: unknown method '" + method + "'");
    }
    py::dict out;
    out["x"] = to_array(sol.x);
    out["residual_norm"] = sol.residual_norm;
    out["method"] = std::string(ok::to_string(sol.method));
    out["rank"] = sol.rank;
    return out;
}

py::dict pca(const Array& x, std::size_t k, const std::string& samples_as) {
    ok::SampleLayout layout = ok::SampleLayout::rows;
    if (samples_as == "columns") {
        layout = ok::SampleLayout::columns;
    } else if (samples_as != "rows") {
        throw ok::InvalidArgument("pca: samples_as must be 'rows' or 'columns'");
    }
    const ok::Matrix m = to_matrix(x);
    const auto model = ok::pca_fit(m, k, layout);
    py::dict out;
    out["mean"] = to_array(model.mean);
    out["components"] = to_array(model.components);
    out["variances"] = to_array(model.variances);
    out["singular_values"] = to_array(model.singular_values);
    out["scores"] = to_array(ok::pca_scores(model, m, layout));
    out["reduced"] = to_array(ok::pca_reduce(model, m, layout));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dense orthogonal factorizations and least squares";

    static py::exception<ok::Error> error(m, "Error", PyExc_RuntimeError);
    // Translators run newest first, so this catch-all for the base class goes in before the
    // specific ones.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ok::Error& e) {
            py::set_error(error, e.what());
        }
    });
    py::register_exception<ok::InvalidArgument>(m, "InvalidArgument", error);
    py::register_exception<ok::DimensionError>(m, "DimensionError", error);
    py::register_exception<ok::SingularMatrixError>(m, "SingularMatrixError", error);
    py::register_exception<ok::NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", error);
    py::register_exception<ok::RankDeficientError>(m, "RankDeficientError", error);
    py::register_exception<ok::ConvergenceError>(m, "ConvergenceError", error);

    m.def("qr", &qr, py::arg("a"), py::arg("method") = "householder", py::arg("t_digits") = 12,
          "(Q, R) with A = Q R; method='pivoted' also returns the column order and rank.");

    m.def(
        "svd",
        [](const Array& a, bool full) {
            const auto f = ok::svd(to_matrix(a), full ? ok::SvdShape::full : ok::SvdShape::reduced);
            return py::make_tuple(to_array(f.u), to_array(f.sigma), to_array(f.vt));
        },
        py::arg("a"), py::arg("full") = false, "(U, sigma, Vt) with A = U diag(sigma) Vt.");

    m.def(
        "jacobi_eig",
        [](const Array& s) {
            const auto e = ok::jacobi_eig(to_matrix(s));
            return py::make_tuple(to_array(e.values), to_array(e.vectors));
        },
        py::arg("s"), "Eigenvalues (descending) and eigenvectors of a symmetric matrix.");

    m.def("lstsq", &lstsq, py::arg("a"), py::arg("b"), py::arg("method") = "auto");

    m.def(
        "pinv", [](const Array& a) { return to_array(ok::pseudoinverse(to_matrix(a))); },
        py::arg("a"));
    m.def(
        "low_rank",
        [](const Array& a, std::size_t k) { return to_array(ok::low_rank(to_matrix(a), k)); },
        py::arg("a"), py::arg("k"));
    m.def(
        "norm2", [](const Array& a) { return ok::norm2(to_matrix(a)); }, py::arg("a"));
    m.def(
        "cond2", [](const Array& a) { return ok::cond2(to_matrix(a)); }, py::arg("a"));
    m.def(
        "numerical_rank",
        [](const Array& a, int t_digits) { return ok::numerical_rank(to_matrix(a), t_digits); },
        py::arg("a"), py::arg("t_digits") = 12);
    m.def(
        "projector",
        [](const Array& a) { return to_array(ok::projector_onto_range(to_matrix(a))); },
        py::arg("a"), "Orthogonal projector onto the range of A.");

    m.def("pca", &pca, py::arg("x"), py::arg("k"), py::arg("samples_as") = "rows");
}
