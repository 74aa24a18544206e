#include "orthokit/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "orthokit/error.hpp"

namespace orthokit {

namespace {

constexpr std::array<char, 4> kModelMagic{'O', 'K', 'D', 'M'};
constexpr std::uint32_t kModelVersion = 1;

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
    std::vector<Field> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
        std::string_view f = line.substr(start, end - start);
        std::size_t col = start + 1;
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) {
            f.remove_prefix(1);
            ++col;
        }
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) {
            f.remove_suffix(1);
        }
        fields.push_back({f, col});
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

double parse_double(const Field& f, std::size_t line) {
    std::string_view s = f.text;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(f.column) +
                             ": invalid number '" + std::string(f.text) + "'",
                         line, f.column);
    }
    if (!std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(f.column) +
                             ": non-finite value '" + std::string(f.text) + "'",
                         line, f.column);
    }
    return v;
}

long parse_int(const Field& f, std::size_t line, long lo, long hi) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (f.text.empty() || ec != std::errc() || ptr != f.text.data() + f.text.size() || v < lo ||
        v > hi) {
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(f.column) +
                             ": expected an integer in [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "], got '" + std::string(f.text) + "'",
                         line, f.column);
    }
    return v;
}

// Next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int ch = 0;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            if (!tok.empty()) {
                break;
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) {
                break;
            }
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

long pgm_number(std::istream& in, const char* what) {
    const std::string tok = pgm_token(in);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
        throw ParseError(std::string("pgm: invalid ") + what + " '" + tok + "'", 0, 0);
    }
    return v;
}

void write_u32(std::ostream& out, std::uint32_t v) {
    std::array<char, 4> b{};
    for (std::size_t i = 0; i < 4; ++i) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
    }
    out.write(b.data(), 4);
}

std::uint32_t read_u32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
        throw IoError("model: truncated header");
    }
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    }
    return v;
}

}  // namespace

Matrix read_csv_matrix(std::istream& in) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) {
            continue;
        }
        const std::vector<Field> fields = split_fields(line);
        if (rows == 0) {
            cols = fields.size();
        } else if (fields.size() != cols) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(cols) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno, fields.back().column);
        }
        for (const Field& f : fields) {
            values.push_back(parse_double(f, lineno));
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError("empty matrix: no data rows", std::max<std::size_t>(lineno, 1), 1);
    }
    return Matrix::from_row_major(rows, cols, std::move(values));
}

Matrix load_csv_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_csv_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
    }
}

Vector load_csv_vector(const std::filesystem::path& path) {
    const Matrix m = load_csv_matrix(path);
    if (m.cols() == 1) {
        return m.get_column(0);
    }
    if (m.rows() == 1) {
        return m.get_row(0);
    }
    throw DimensionError(path.string() + ": expected a single row or column, got " + m.shape());
}

void write_csv_matrix(std::ostream& out, const Matrix& m, int significant) {
    std::array<char, 64> buf{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            double v = m(i, j);
            if (v == 0.0) {
                v = 0.0;
            }
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                           std::chars_format::general, significant);
            out.write(buf.data(), res.ptr - buf.data());
        }
        out << '\n';
    }
}

void save_csv_matrix(const std::filesystem::path& path, const Matrix& m, int significant) {
    auto out = open_out(path);
    write_csv_matrix(out, m, significant);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

GrayImage read_pgm(std::istream& in) {
    const std::string magic = pgm_token(in);
    if (magic != "P2" && magic != "P5") {
        throw ParseError("pgm: unsupported magic '" + magic + "', expected P2 or P5", 1, 1);
    }
    const long width = pgm_number(in, "width");
    const long height = pgm_number(in, "height");
    const long maxval = pgm_number(in, "maxval");
    if (width == 0 || height == 0) {
        throw ParseError("pgm: empty image", 0, 0);
    }
    if (maxval < 1 || maxval > 255) {
        throw ParseError("pgm: maxval " + std::to_string(maxval) + " not in [1, 255]", 0, 0);
    }
    const auto w = static_cast<std::size_t>(width);
    const auto h = static_cast<std::size_t>(height);
    const double scale = 255.0 / static_cast<double>(maxval);
    Matrix px(h, w);
    if (magic == "P5") {
        std::vector<unsigned char> raw(w * h);
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
            throw ParseError("pgm: truncated pixel data", 0, 0);
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            px.data()[i] = std::min(static_cast<double>(raw[i]), static_cast<double>(maxval)) * scale;
        }
    } else {
        for (std::size_t i = 0; i < w * h; ++i) {
            const std::string tok = pgm_token(in);
            long v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < 0 ||
                v > maxval) {
                throw ParseError("pgm: invalid pixel " + std::to_string(i) + " '" + tok + "'", 0,
                                 0);
            }
            px.data()[i] = static_cast<double>(v) * scale;
        }
    }
    return GrayImage{std::move(px)};
}

GrayImage load_pgm(const std::filesystem::path& path) {
    auto in = open_in(path, true);
    try {
        return read_pgm(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
    }
}

void write_pgm(std::ostream& out, const GrayImage& img) {
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<char> raw(img.width() * img.height());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = std::clamp(img.pixels.data()[i], 0.0, 255.0);
        raw[i] = static_cast<char>(static_cast<unsigned char>(std::lround(v)));
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    auto out = open_out(path, true);
    write_pgm(out, img);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

DigitDataset read_digits_csv(std::istream& in, bool allow_unlabeled) {
    std::vector<std::vector<double>> columns;
    DigitDataset data;
    std::string line;
    std::size_t lineno = 0;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) {
            continue;
        }
        const std::vector<Field> fields = split_fields(line);
        if (expected == 0) {
            expected = allow_unlabeled && fields.size() == kDigitPixels ? kDigitPixels
                                                                          : kDigitPixels + 1;
        }
        if (fields.size() != expected) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(expected) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno, 1);
        }
        const std::size_t first = expected - kDigitPixels;
        if (first == 1) {
            data.labels.push_back(static_cast<std::size_t>(parse_int(fields[0], lineno, 0, 9)));
        }
        std::vector<double> col(kDigitPixels);
        for (std::size_t i = 0; i < kDigitPixels; ++i) {
            col[i] = static_cast<double>(parse_int(fields[i + first], lineno, 0, 255)) / 255.0;
        }
        columns.push_back(std::move(col));
    }
    if (columns.empty()) {
        throw ParseError("digits: no records", std::max<std::size_t>(lineno, 1), 1);
    }
    data.images = Matrix(kDigitPixels, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < kDigitPixels; ++i) {
            data.images(i, j) = columns[j][i];
        }
    }
    return data;
}

DigitDataset load_digits(const std::filesystem::path& path, bool allow_unlabeled) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw IoError(path.string() + ": no .csv files in directory");
        }
    } else {
        files.push_back(path);
    }

    std::vector<DigitDataset> parts;
    std::size_t total = 0;
    bool labelled = true;
    for (const auto& file : files) {
        auto in = open_in(file);
        try {
            parts.push_back(read_digits_csv(in, allow_unlabeled));
        } catch (const ParseError& e) {
            throw ParseError(file.string() + ": " + e.what(), e.line(), e.column());
        }
        total += parts.back().images.cols();
        labelled = labelled && !parts.back().labels.empty();
    }
    if (!labelled && std::any_of(parts.begin(), parts.end(),
                                 [](const DigitDataset& p) { return !p.labels.empty(); })) {
        throw ParseError(path.string() + ": mixes labelled and unlabelled files", 1, 1);
    }
    if (parts.size() == 1) {
        return std::move(parts.front());
    }
    DigitDataset all;
    all.images = Matrix(kDigitPixels, total);
    std::size_t col = 0;
    for (const auto& part : parts) {
        for (std::size_t j = 0; j < part.images.cols(); ++j, ++col) {
            for (std::size_t i = 0; i < kDigitPixels; ++i) {
                all.images(i, col) = part.images(i, j);
            }
            if (labelled) {
                all.labels.push_back(part.labels[j]);
            }
        }
    }
    return all;
}

void write_digits_csv(std::ostream& out, const DigitDataset& data) {
    if (data.images.rows() != kDigitPixels || data.labels.size() != data.images.cols()) {
        throw DimensionError("write_digits_csv: expected 784 x N images with N labels");
    }
    for (std::size_t j = 0; j < data.labels.size(); ++j) {
        out << data.labels[j];
        for (std::size_t i = 0; i < kDigitPixels; ++i) {
            const double v = std::clamp(data.images(i, j), 0.0, 1.0);
            out << ',' << std::lround(255.0 * v);
        }
        out << '\n';
    }
}

void write_model(std::ostream& out, const DigitModel& model) {
    if (model.bases.size() != kDigitClasses) {
        throw DimensionError("write_model: expected 10 class bases, got " +
                             std::to_string(model.bases.size()));
    }
    for (const Matrix& b : model.bases) {
        if (b.rows() != kDigitPixels || b.cols() != model.k) {
            throw DimensionError("write_model: class basis is " + b.shape() + ", expected 784x" +
                                 std::to_string(model.k));
        }
    }
    out.write(kModelMagic.data(), kModelMagic.size());
    write_u32(out, kModelVersion);
    write_u32(out, static_cast<std::uint32_t>(model.k));
    std::array<char, 8> b{};
    for (const Matrix& basis : model.bases) {
        for (double v : basis.data()) {
            const auto bits = std::bit_cast<std::uint64_t>(v);
            for (std::size_t i = 0; i < 8; ++i) {
                b[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
            }
            out.write(b.data(), 8);
        }
    }
}

DigitModel read_model(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || magic != kModelMagic) {
        throw IoError("model: bad magic, not an OKDM file");
    }
    const std::uint32_t version = read_u32(in);
    if (version != kModelVersion) {
        throw IoError("model: unsupported version " + std::to_string(version));
    }
    const std::uint32_t k = read_u32(in);
    if (k == 0 || k > kDigitPixels) {
        throw IoError("model: invalid basis size " + std::to_string(k));
    }
    DigitModel model;
    model.k = k;
    std::array<unsigned char, 8> b{};
    for (std::size_t c = 0; c < kDigitClasses; ++c) {
        Matrix basis(kDigitPixels, k);
        for (double& v : basis.data()) {
            if (!in.read(reinterpret_cast<char*>(b.data()), 8)) {
                throw IoError("model: truncated basis data");
            }
            std::uint64_t bits = 0;
            for (std::size_t i = 0; i < 8; ++i) {
                bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
            }
            v = std::bit_cast<double>(bits);
            if (!std::isfinite(v)) {
                throw IoError("model: non-finite basis entry");
            }
        }
        model.bases.push_back(std::move(basis));
    }
    return model;
}

void save_model(const std::filesystem::path& path, const DigitModel& model) {
    auto out = open_out(path, true);
    write_model(out, model);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

DigitModel load_model(const std::filesystem::path& path) {
    auto in = open_in(path, true);
    return read_model(in);
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace orthokit
