#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "orthokit/apps/image.hpp"
#include "orthokit/cli.hpp"
#include "orthokit/io.hpp"

namespace ok = orthokit;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ORTHOKIT_TEST_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = ok::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

bool contains(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, SolveHill) {
    for (const char* method : {"auto", "normal", "qr", "qr-pivoted", "svd"}) {
        const auto r = run({"solve", data("hill.csv"), data("hill_rhs.csv"), "--method", method});
        ASSERT_EQ(r.code, 0) << method << ": " << r.err;
        EXPECT_TRUE(contains(r.out, "x = 1236.000000, 1943.000000, 2416.000000")) << r.out;
        EXPECT_TRUE(contains(r.out, "residual_norm = 5.916080")) << r.out;
    }
    const auto r = run({"solve", data("hill.csv"), data("hill_rhs.csv")});
    EXPECT_TRUE(contains(r.out, "method = qr"));
    EXPECT_TRUE(contains(r.out, "cond = 2.000000"));
}

TEST(Cli, SvdValuesOnly) {
    const auto r = run({"--precision", "4", "svd", data("hill.csv"), "--values-only"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "sigma = 2.0000, 2.0000, 1.0000")) << r.out;
}

TEST(Cli, QrPrintsFactors) {
    const auto r = run({"--precision", "4", "qr", data("hill.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "-1.7321")) << r.out;
    EXPECT_TRUE(contains(r.out, "Q (6x6)")) << r.out;
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"svd", data("hill.csv")};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, InputErrorsExitOne) {
    auto r = run({"svd", data("empty.csv")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "error: parse_error:")) << r.err;
    EXPECT_TRUE(contains(r.err, "empty matrix")) << r.err;

    r = run({"svd", data("bad.csv")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "line 2, column 3")) << r.err;

    r = run({"svd", data("missing.csv")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "error: io_error:")) << r.err;

    r = run({"frobnicate"});
    EXPECT_EQ(r.code, 1);

    r = run({"solve", data("hill.csv"), data("near_singular_rhs.csv")});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "dimension_mismatch")) << r.err;
}

TEST(Cli, NumericalFailureExitsTwo) {
    const auto r =
        run({"solve", data("near_singular.csv"), data("near_singular_rhs.csv"), "--method", "normal"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "error: rank_deficient:")) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, SummarizeRanksSentences) {
    const auto r = run({"summarize", data("sentences.txt"), "--top", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "sentences = 4"));
    EXPECT_FALSE(contains(r.out, "Cats sleep"));
}

TEST(Cli, CompressWritesImage) {
    const fs::path dir = fs::temp_directory_path() / "orthokit_cli_compress";
    fs::create_directories(dir);
    ok::Matrix p(10, 8);
    for (std::size_t i = 0; i < 80; ++i) p.data()[i] = static_cast<double>((i * 37) % 256);
    ok::save_pgm(dir / "in.pgm", ok::GrayImage{p});
    const auto r = run({"compress", (dir / "in.pgm").string(), (dir / "out.pgm").string(), "--k", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "k = 2"));
    EXPECT_EQ(ok::load_pgm(dir / "out.pgm").pixels.shape(), "10x8");
    fs::remove_all(dir);
}

TEST(Cli, DigitsSynthTrainClassify) {
    const fs::path dir = fs::temp_directory_path() / "orthokit_cli_digits";
    fs::create_directories(dir);
    const auto csv = (dir / "d.csv").string();
    const auto model = (dir / "m.okdm").string();
    ASSERT_EQ(run({"digits", "synth", "--per-class", "12", "--seed", "9", "--out", csv}).code, 0);
    auto r = run({"digits", "train", csv, "--k", "3", "--model", model});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"digits", "classify", "--model", model, csv});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "accuracy = 1.000000")) << r.out.substr(r.out.size() - 200);
    fs::remove_all(dir);
}
