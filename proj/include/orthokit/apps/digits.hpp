#pragma once

// Handwritten-digit classification by distance to per-class subspaces
// spanned by the leading left singular vectors ("singular images").

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orthokit/matrix.hpp"

namespace orthokit {

inline constexpr std::size_t kDigitPixels = 784;
inline constexpr std::size_t kDigitClasses = 10;

struct DigitModel {
    std::size_t k = 0;
    std::vector<Matrix> bases;  // one pixels x k matrix per class

    [[nodiscard]] std::size_t pixels() const noexcept {
        return bases.empty() ? 0 : bases.front().rows();
    }
};

// classes[c] holds the training images of digit c as columns. Classes are
// trained concurrently when `parallel` is set.
[[nodiscard]] DigitModel digits_train(std::span<const Matrix> classes, std::size_t k,
                                      bool parallel = true);

struct DigitPrediction {
    std::vector<std::size_t> labels;
    Matrix residuals;  // classes x t, ||d_j - U_c U_c^T d_j||
};

[[nodiscard]] DigitPrediction digits_classify(const DigitModel& model, const Matrix& d);

// ||d - U U^T d|| for a single vector.
[[nodiscard]] double subspace_residual(const Matrix& basis, const Vector& d);

struct DigitDataset {
    Matrix images;  // pixels x count, intensities in [0, 1]
    std::vector<std::size_t> labels;
};

// Split a dataset into per-class image matrices.
[[nodiscard]] std::vector<Matrix> group_by_class(const DigitDataset& data,
                                                 std::size_t classes = kDigitClasses);

struct SynthOptions {
    std::size_t classes = kDigitClasses;
    std::size_t per_class = 50;
    std::size_t pixels = kDigitPixels;
    std::size_t subspace_dim = 5;
    std::size_t support = 60;  // pixels owned by each class
    double noise = 1e-3;
    std::uint64_t seed = 1;
};

// Each class lives near its own random low-dimensional subspace supported on
// a disjoint set of pixels; samples are random combinations plus Gaussian
// noise, clamped to [0, 1]. Samples are ordered class by class.
[[nodiscard]] DigitDataset synth_digits(const SynthOptions& options);

}  // namespace orthokit
