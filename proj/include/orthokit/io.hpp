#pragma once

// File formats: CSV matrices, PGM images, MNIST-style digit CSV and the
// binary digit model container.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "orthokit/apps/digits.hpp"
#include "orthokit/apps/image.hpp"
#include "orthokit/matrix.hpp"

namespace orthokit {

// Comma-separated decimal fields, one matrix row per line, no header. Blank
// lines are skipped. Errors carry 1-based line and column.
[[nodiscard]] Matrix read_csv_matrix(std::istream& in);
[[nodiscard]] Matrix load_csv_matrix(const std::filesystem::path& path);

// A single row or a single column read as a vector.
[[nodiscard]] Vector load_csv_vector(const std::filesystem::path& path);

// Shortest-round-trip style output with `significant` digits; 17 reproduces
// every double exactly.
void write_csv_matrix(std::ostream& out, const Matrix& m, int significant = 17);
void save_csv_matrix(const std::filesystem::path& path, const Matrix& m, int significant = 17);

// P2 or P5 with maxval <= 255; values are rescaled to [0, 255].
[[nodiscard]] GrayImage read_pgm(std::istream& in);
[[nodiscard]] GrayImage load_pgm(const std::filesystem::path& path);
// Binary P5, maxval 255, pixels rounded after clamping.
void write_pgm(std::ostream& out, const GrayImage& img);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

// One record per line: label 0-9, then 784 integer pixels 0-255. Images are
// returned scaled to [0, 1]. With allow_unlabeled, records of 784 pixels and
// no label are also accepted (all records alike); labels are then empty.
[[nodiscard]] DigitDataset read_digits_csv(std::istream& in, bool allow_unlabeled = false);
// A file, or every *.csv file in a directory in name order.
[[nodiscard]] DigitDataset load_digits(const std::filesystem::path& path,
                                       bool allow_unlabeled = false);
void write_digits_csv(std::ostream& out, const DigitDataset& data);

// "OKDM", u32 version, u32 k, then the class bases as row-major 784 x k
// little-endian doubles.
void write_model(std::ostream& out, const DigitModel& model);
[[nodiscard]] DigitModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const DigitModel& model);
[[nodiscard]] DigitModel load_model(const std::filesystem::path& path);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace orthokit
