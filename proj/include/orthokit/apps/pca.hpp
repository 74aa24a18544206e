#pragma once

// Principal component analysis through the SVD of the centred data.

#include <cstddef>

#include "orthokit/matrix.hpp"

namespace orthokit {

// columns: X is d x n with one sample per column. rows: n x d.
enum class SampleLayout { columns, rows };

struct PcaModel {
    Vector mean;           // length d
    Matrix components;     // d x k, orthonormal columns
    Vector variances;      // sigma_j^2 / (n - 1), j < k
    Vector singular_values;  // all min(d, n) values of the centred data
    std::size_t samples = 0;
};

[[nodiscard]] PcaModel pca_fit(const Matrix& x, std::size_t k,
                               SampleLayout layout = SampleLayout::columns);

// k x n coordinates of the centred samples in the component basis.
[[nodiscard]] Matrix pca_scores(const PcaModel& model, const Matrix& x,
                                SampleLayout layout = SampleLayout::columns);

// Rank-k reconstruction in the input layout: centre, project, rebuild,
// add the mean back.
[[nodiscard]] Matrix pca_reduce(const PcaModel& model, const Matrix& x,
                                SampleLayout layout = SampleLayout::columns);

}  // namespace orthokit
