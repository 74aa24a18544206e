#include "orthokit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "orthokit/apps/digits.hpp"
#include "orthokit/apps/image.hpp"
#include "orthokit/apps/pca.hpp"
#include "orthokit/apps/polyfit.hpp"
#include "orthokit/apps/text.hpp"
#include "orthokit/error.hpp"
#include "orthokit/io.hpp"
#include "orthokit/lstsq.hpp"
#include "orthokit/qr.hpp"
#include "orthokit/svd.hpp"

namespace orthokit::cli {

namespace {

constexpr int kDefaultPrecision = 6;

class UsageError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "usage"; }
};

// Fixed-point, locale-independent, no negative zero.
class Printer {
public:
    Printer(std::ostream& out, int precision) : out_(out), precision_(precision) {}

    [[nodiscard]] std::string num(double v) const {
        std::array<char, 512> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::fixed, precision_);
        std::string s(buf.data(), res.ptr);
        if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
            s.erase(0, 1);
        }
        return s;
    }

    [[nodiscard]] std::string join(std::span<const double> values) const {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) {
                s += ", ";
            }
            s += num(values[i]);
        }
        return s;
    }

    void scalar(std::string_view key, double v) { out_ << key << " = " << num(v) << '\n'; }

    template <typename T>
    void value(std::string_view key, const T& v) {
        out_ << key << " = " << v << '\n';
    }

    void vector(std::string_view key, std::span<const double> values) {
        out_ << key << " =";
        if (!values.empty()) {
            out_ << ' ' << join(values);
        }
        out_ << '\n';
    }

    void indices(std::string_view key, std::span<const std::size_t> values) {
        out_ << key << " =";
        for (std::size_t i = 0; i < values.size(); ++i) {
            out_ << (i == 0 ? " " : ", ") << values[i];
        }
        out_ << '\n';
    }

    void matrix(std::string_view key, const Matrix& m) {
        out_ << key << " (" << m.shape() << ") =\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out_ << join(m.row_span(i)) << '\n';
        }
    }

    std::ostream& raw() { return out_; }
    [[nodiscard]] int precision() const noexcept { return precision_; }

private:
    std::ostream& out_;
    int precision_;
};

int env_precision() {
    const char* env = std::getenv("OK_PRECISION");
    if (env == nullptr || *env == '\0') {
        return kDefaultPrecision;
    }
    const std::string_view s(env);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1 || v > 17) {
        throw UsageError("OK_PRECISION must be an integer in [1, 17], got '" + std::string(s) + "'");
    }
    return v;
}

void save_prefixed(const std::string& prefix, std::string_view name, const Matrix& m,
                   int significant) {
    save_csv_matrix(prefix + "_" + std::string(name) + ".csv", m, significant);
}

struct Options {
    std::optional<int> precision;

    std::string qr_input;
    std::string qr_method = "householder";
    std::string qr_mode = "qr";
    int t_digits = 12;
    std::string qr_save;

    std::string svd_input;
    bool svd_reduced = false;
    bool svd_values_only = false;
    std::string svd_save;

    std::string solve_a;
    std::string solve_b;
    std::string solve_method = "auto";
    double eps_a = std::numeric_limits<double>::epsilon();
    std::string solve_save;

    std::string fit_input;
    std::size_t degree = 1;

    std::string pca_input;
    std::size_t pca_k = 1;
    std::string samples_as = "rows";

    std::string compress_in;
    std::string compress_out;
    std::size_t compress_k = 1;

    std::string denoise_in;
    std::string denoise_out;
    double threshold = 0.0;

    std::string text_input;
    std::string stopwords;
    std::size_t top = 3;

    std::string train_input;
    std::size_t digits_k = 5;
    std::string model_out;
    bool serial = false;

    std::string classify_model;
    std::string classify_input;

    std::size_t synth_classes = kDigitClasses;
    std::size_t synth_per_class = 50;
    std::uint64_t synth_seed = 1;
    std::string synth_out;
};

void cmd_qr(const Options& o, Printer& p) {
    const Matrix a = load_csv_matrix(o.qr_input);
    const bool want_q = o.qr_mode == "qr";
    QrFactorization f;
    if (o.qr_method == "householder") {
        f = qr_householder(a, want_q ? QrMode::q_and_r : QrMode::r_only);
    } else if (o.qr_method == "givens") {
        f = qr_givens(a);
    } else {
        f = qr_pivoted(a, o.t_digits);
    }
    p.value("method", o.qr_method);
    p.value("shape", a.shape());
    p.matrix("R", f.r);
    std::optional<Matrix> q;
    if (want_q) {
        q = f.q_matrix();
        p.matrix("Q", *q);
    }
    if (f.perm) {
        p.indices("perm", *f.perm);
        p.value("rank", *f.rank);
    }
    if (!o.qr_save.empty()) {
        save_prefixed(o.qr_save, "R", f.r, 17);
        if (q) {
            save_prefixed(o.qr_save, "Q", *q, 17);
        }
    }
}

void cmd_svd(const Options& o, Printer& p) {
    const Matrix a = load_csv_matrix(o.svd_input);
    if (o.svd_values_only) {
        const Vector sigma = singular_values(a);
        p.vector("sigma", sigma);
        if (!o.svd_save.empty()) {
            save_prefixed(o.svd_save, "S", Matrix::column(sigma), 17);
        }
        return;
    }
    const SvdFactorization f = svd(a, o.svd_reduced ? SvdShape::reduced : SvdShape::full);
    p.value("shape", a.shape());
    p.vector("sigma", f.sigma);
    p.value("rank", f.sigma.empty() ? 0 : numerical_rank(f.sigma, rank_tolerance(a)));
    p.matrix("U", f.u);
    p.matrix("Vt", f.vt);
    if (!o.svd_save.empty()) {
        save_prefixed(o.svd_save, "U", f.u, 17);
        save_prefixed(o.svd_save, "S", Matrix::column(f.sigma), 17);
        save_prefixed(o.svd_save, "Vt", f.vt, 17);
    }
}

void cmd_solve(const Options& o, Printer& p) {
    const Matrix a = load_csv_matrix(o.solve_a);
    const Vector b = load_csv_vector(o.solve_b);
    LeastSquaresSolution sol;
    if (o.solve_method == "auto") {
        sol = solve(a, b);
    } else if (o.solve_method == "normal") {
        sol = solve_normal(a, b);
    } else if (o.solve_method == "qr") {
        sol = solve_qr(a, b);
    } else if (o.solve_method == "qr-pivoted") {
        sol = solve_qr_pivoted(a, b);
    } else {
        sol = solve_svd(a, b);
    }
    p.value("method", to_string(sol.method));
    p.value("rank", sol.rank);
    if (sol.free_params) {
        p.value("free_params", *sol.free_params);
    }
    p.vector("x", sol.x);
    p.scalar("residual_norm", sol.residual_norm);
    if (norm2(b) > 0.0) {
        const ConditioningReport rep = conditioning_report(a, b, sol.x, o.eps_a);
        p.scalar("cond", rep.cond);
        p.scalar("cos_theta", rep.cos_theta);
        p.scalar("theta", rep.theta);
        p.scalar("rhs_sensitivity_bound", rep.rhs_sensitivity_bound);
        p.scalar("matrix_sensitivity_bound", rep.matrix_sensitivity_bound);
    }
    if (!o.solve_save.empty()) {
        save_csv_matrix(o.solve_save, Matrix::column(sol.x), 17);
    }
}

void cmd_fit(const Options& o, Printer& p) {
    const Matrix data = load_csv_matrix(o.fit_input);
    if (data.cols() != 2) {
        throw DimensionError("fit: expected two columns (t, y), got " + data.shape());
    }
    const PolyFit fit = polyfit(data.get_column(0), data.get_column(1), o.degree);
    p.value("degree", o.degree);
    p.vector("coeffs", fit.coeffs);
    p.scalar("residual_norm", fit.residual_norm);
    p.scalar("cond", fit.cond);
}

void cmd_pca(const Options& o, Printer& p) {
    const Matrix x = load_csv_matrix(o.pca_input);
    const SampleLayout layout = o.samples_as == "rows" ? SampleLayout::rows : SampleLayout::columns;
    const PcaModel model = pca_fit(x, o.pca_k, layout);
    p.value("samples", model.samples);
    p.value("k", o.pca_k);
    p.vector("mean", model.mean);
    p.vector("variances", model.variances);
    p.matrix("components", model.components);
    p.matrix("scores", pca_scores(model, x, layout));
    p.matrix("reduced", pca_reduce(model, x, layout));
}

void print_image_result(const CompressedImage& c, Printer& p) {
    p.value("size", std::to_string(c.image.height()) + "x" + std::to_string(c.image.width()));
    p.value("k", c.k);
    p.scalar("storage_ratio", c.storage_ratio);
    p.vector("sigma_tail", std::span<const double>(c.sigma.values()).subspan(c.k));
}

void cmd_compress(const Options& o, Printer& p) {
    const CompressedImage c = image_compress(load_pgm(o.compress_in), o.compress_k);
    save_pgm(o.compress_out, c.image);
    print_image_result(c, p);
}

void cmd_denoise(const Options& o, Printer& p) {
    const CompressedImage c = image_denoise(load_pgm(o.denoise_in), o.threshold);
    save_pgm(o.denoise_out, c.image);
    print_image_result(c, p);
}

void cmd_summarize(const Options& o, Printer& p) {
    const std::vector<std::string> sentences = split_sentences(read_text_file(o.text_input));
    std::set<std::string> stop;
    if (!o.stopwords.empty()) {
        for (const std::string& line : split_sentences(read_text_file(o.stopwords))) {
            for (std::string& w : tokenize(line)) {
                stop.insert(std::move(w));
            }
        }
    }
    const TermSentenceMatrix ts = build_term_sentence(sentences, stop);
    const SummaryScores scores = summarize_scores(ts);
    p.value("sentences", sentences.size());
    p.value("terms", ts.terms.size());
    p.scalar("sigma", scores.sigma);
    for (std::size_t i : top_indices(scores.sentences, o.top)) {
        p.raw() << "sentence " << i << ' ' << p.num(scores.sentences[i]) << ' ' << sentences[i]
                << '\n';
    }
    for (std::size_t i : top_indices(scores.terms, o.top)) {
        p.raw() << "term " << ts.terms[i] << ' ' << p.num(scores.terms[i]) << '\n';
    }
}

void cmd_digits_train(const Options& o, Printer& p) {
    const DigitDataset data = load_digits(o.train_input);
    const std::vector<Matrix> classes = group_by_class(data);
    const DigitModel model = digits_train(classes, o.digits_k, !o.serial);
    save_model(o.model_out, model);
    p.value("samples", data.labels.size());
    p.value("k", model.k);
    std::vector<std::size_t> counts;
    for (const Matrix& c : classes) {
        counts.push_back(c.cols());
    }
    p.indices("class_counts", counts);
    p.value("model", o.model_out);
}

void cmd_digits_classify(const Options& o, Printer& p) {
    const DigitModel model = load_model(o.classify_model);
    const DigitDataset data = load_digits(o.classify_input, true);
    const DigitPrediction pred = digits_classify(model, data.images);
    const bool labelled = !data.labels.empty();
    std::size_t correct = 0;
    for (std::size_t j = 0; j < pred.labels.size(); ++j) {
        p.raw() << "sample " << j << " label " << pred.labels[j];
        if (labelled) {
            p.raw() << " true " << data.labels[j];
            correct += pred.labels[j] == data.labels[j] ? 1 : 0;
        }
        p.raw() << " residuals " << p.join(pred.residuals.get_column(j)) << '\n';
    }
    p.value("samples", pred.labels.size());
    if (labelled) {
        p.scalar("accuracy",
                 static_cast<double>(correct) / static_cast<double>(pred.labels.size()));
    }
}

void cmd_digits_synth(const Options& o, Printer& p) {
    if (o.synth_classes < 1 || o.synth_classes > kDigitClasses) {
        throw UsageError("digits synth: --classes must be in [1, 10]");
    }
    SynthOptions so;
    so.classes = o.synth_classes;
    so.per_class = o.synth_per_class;
    so.seed = o.synth_seed;
    const DigitDataset data = synth_digits(so);
    std::ofstream out(o.synth_out, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + o.synth_out + " for writing");
    }
    write_digits_csv(out, data);
    if (!out) {
        throw IoError("failed writing " + o.synth_out);
    }
    p.value("samples", data.labels.size());
    p.value("out", o.synth_out);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dense orthogonal factorizations, least squares and SVD applications",
                 "orthokit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--precision", o.precision, "Decimals in numeric output (1-17)")
        ->check(CLI::Range(1, 17));

    auto* qr = app.add_subcommand("qr", "QR factorization of a CSV matrix");
    qr->add_option("matrix", o.qr_input, "Input matrix (CSV)")->required();
    qr->add_option("--method", o.qr_method)
        ->check(CLI::IsMember({"householder", "givens", "pivoted"}))
        ->capture_default_str();
    qr->add_option("--mode", o.qr_mode, "r: R only; qr: Q and R")
        ->check(CLI::IsMember({"r", "qr"}))
        ->capture_default_str();
    qr->add_option("--t-digits", o.t_digits, "Rank threshold 10^-t ||A||_inf (pivoted)")
        ->check(CLI::Range(1, 300))
        ->capture_default_str();
    qr->add_option("--save", o.qr_save, "Write PREFIX_R.csv (and PREFIX_Q.csv)");

    auto* sv = app.add_subcommand("svd", "Singular value decomposition of a CSV matrix");
    sv->add_option("matrix", o.svd_input, "Input matrix (CSV)")->required();
    sv->add_flag("--reduced", o.svd_reduced, "Reduced factors");
    sv->add_flag("--values-only", o.svd_values_only, "Print singular values only");
    sv->add_option("--save", o.svd_save, "Write PREFIX_U.csv, PREFIX_S.csv, PREFIX_Vt.csv");

    auto* so = app.add_subcommand("solve", "Least-squares solution of A x ~ b");
    so->add_option("matrix", o.solve_a, "Matrix A (CSV)")->required();
    so->add_option("rhs", o.solve_b, "Right-hand side b (CSV row or column)")->required();
    so->add_option("--method", o.solve_method)
        ->check(CLI::IsMember({"auto", "normal", "qr", "qr-pivoted", "svd"}))
        ->capture_default_str();
    so->add_option("--eps-a", o.eps_a, "Relative size of matrix perturbations for the bound")
        ->check(CLI::NonNegativeNumber);
    so->add_option("--save", o.solve_save, "Write x as a CSV column");

    auto* fit = app.add_subcommand("fit", "Polynomial least-squares fit of (t, y) pairs");
    fit->add_option("data", o.fit_input, "Two-column CSV of t, y")->required();
    fit->add_option("--degree", o.degree)->required();

    auto* pca = app.add_subcommand("pca", "Principal component analysis");
    pca->add_option("data", o.pca_input, "Data matrix (CSV)")->required();
    pca->add_option("--k", o.pca_k)->required();
    pca->add_option("--samples-as", o.samples_as, "Whether samples are rows or columns")
        ->check(CLI::IsMember({"rows", "cols"}))
        ->capture_default_str();

    auto* comp = app.add_subcommand("compress", "Rank-k compression of a PGM image");
    comp->add_option("input", o.compress_in)->required();
    comp->add_option("output", o.compress_out)->required();
    comp->add_option("--k", o.compress_k)->required();

    auto* den = app.add_subcommand("denoise", "Drop singular values at or below a threshold");
    den->add_option("input", o.denoise_in)->required();
    den->add_option("output", o.denoise_out)->required();
    den->add_option("--threshold", o.threshold)->required()->check(CLI::NonNegativeNumber);

    auto* sum = app.add_subcommand("summarize", "Rank sentences and terms of a text");
    sum->add_option("text", o.text_input, "One sentence per line")->required();
    sum->add_option("--stopwords", o.stopwords, "One stopword per line");
    sum->add_option("--top", o.top)->capture_default_str();

    auto* dig = app.add_subcommand("digits", "Digit classification with singular images");
    dig->require_subcommand(1);
    auto* train = dig->add_subcommand("train", "Train per-class bases");
    train->add_option("data", o.train_input, "Digits CSV or directory of CSV files")->required();
    train->add_option("--k", o.digits_k)->required();
    train->add_option("--model", o.model_out)->required();
    train->add_flag("--serial", o.serial, "Train classes one at a time");
    auto* classify = dig->add_subcommand("classify", "Classify digit images");
    classify->add_option("--model", o.classify_model)->required();
    classify->add_option("data", o.classify_input, "Digits CSV, labelled or not")->required();
    auto* synth = dig->add_subcommand("synth", "Write a synthetic digits CSV");
    synth->add_option("--classes", o.synth_classes)->capture_default_str();
    synth->add_option("--per-class", o.synth_per_class)->capture_default_str();
    synth->add_option("--seed", o.synth_seed)->capture_default_str();
    synth->add_option("--out", o.synth_out)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 1;
    }

    try {
        Printer printer(out, o.precision ? *o.precision : env_precision());
        if (qr->parsed()) {
            cmd_qr(o, printer);
        } else if (sv->parsed()) {
            cmd_svd(o, printer);
        } else if (so->parsed()) {
            cmd_solve(o, printer);
        } else if (fit->parsed()) {
            cmd_fit(o, printer);
        } else if (pca->parsed()) {
            cmd_pca(o, printer);
        } else if (comp->parsed()) {
            cmd_compress(o, printer);
        } else if (den->parsed()) {
            cmd_denoise(o, printer);
        } else if (sum->parsed()) {
            cmd_summarize(o, printer);
        } else if (train->parsed()) {
            cmd_digits_train(o, printer);
        } else if (classify->parsed()) {
            cmd_digits_classify(o, printer);
        } else if (synth->parsed()) {
            cmd_digits_synth(o, printer);
        }
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return e.numerical() ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace orthokit::cli
