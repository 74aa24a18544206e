#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthokit/apps/text.hpp"
#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"
#include "test_util.hpp"

namespace ok = orthokit;
using ok::Matrix;
using ok::Vector;
using namespace ok::test;

namespace {

const std::vector<std::string> kSentences = {
    "The solver computes an orthogonal factorization.",
    "Orthogonal factorizations are stable.",
    "Stable solvers compute accurate answers.",
    "Cats sleep all day.",
};

const std::set<std::string> kStop = {"the", "an", "are", "all"};

}  // namespace

TEST(Text, SplitSentencesSkipsBlankLines) {
    const auto s = ok::split_sentences("first line\n\n  \r\nsecond\r\nthird");
    EXPECT_EQ(s, (std::vector<std::string>{"first line", "second", "third"}));
    EXPECT_TRUE(ok::split_sentences("").empty());
}

TEST(Text, TokenizeLowercasesAndStripsPunctuation) {
    EXPECT_EQ(ok::tokenize("Hello, World!  It's ok."),
              (std::vector<std::string>{"hello", "world", "its", "ok"}));
}

TEST(Text, Stemming) {
    EXPECT_EQ(ok::stem("compute"), ok::stem("computing"));
    EXPECT_EQ(ok::stem("computed"), ok::stem("computes"));
    EXPECT_EQ(ok::stem("class"), "class");
    EXPECT_EQ(ok::stem("is"), "is");
    EXPECT_EQ(ok::stem("sing"), "sing");
    EXPECT_GE(ok::stem("uses").size(), 3u);
}

TEST(Text, CountsRepeatedTerms) {
    const std::vector<std::string> s{"a a b"};
    const auto ts = ok::build_term_sentence(s, {});
    EXPECT_EQ(ts.terms, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(ts.a, (Matrix{{2}, {1}}));
}

TEST(Text, StopwordsRemovedBeforeStemming) {
    const std::vector<std::string> s{"The cat and the dog", "A dog"};
    const auto ts = ok::build_term_sentence(s, {"the", "and", "a"});
    EXPECT_EQ(ts.terms, (std::vector<std::string>{"cat", "dog"}));
    EXPECT_EQ(ts.a, (Matrix{{1, 0}, {1, 1}}));
}

TEST(Text, InflectionsShareOneRow) {
    const std::vector<std::string> s{"compute computing"};
    const auto ts = ok::build_term_sentence(s, {});
    ASSERT_EQ(ts.terms.size(), 1u);
    EXPECT_EQ(ts.a(0, 0), 2.0);
}

TEST(Text, Errors) {
    EXPECT_THROW((void)ok::build_term_sentence(std::vector<std::string>{}, {}), ok::InvalidArgument);
    EXPECT_THROW((void)ok::build_term_sentence(std::vector<std::string>{"the"}, {"the"}),
                 ok::InvalidArgument);
    ok::TermSentenceMatrix zero{{"x"}, Matrix(1, 2)};
    EXPECT_THROW((void)ok::summarize_scores(zero), ok::InvalidArgument);
}

TEST(Summarize, RankOneMatrixScoresAreNormalizedFactors) {
    ok::TermSentenceMatrix ts{{"x", "y", "z"}, Matrix{{1, 2}, {2, 4}, {2, 4}}};
    const auto sc = ok::summarize_scores(ts);
    EXPECT_NEAR(sc.sigma, 3.0 * std::sqrt(5.0), 1e-12);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(sc.terms[i], ts.a(i, 0) / 3.0, 1e-12);
    EXPECT_NEAR(sc.sentences[0], 1 / std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(sc.sentences[1], 2 / std::sqrt(5.0), 1e-12);
}

TEST(Summarize, SingularPairRelations) {
    const auto ts = ok::build_term_sentence(kSentences, kStop);
    const auto sc = ok::summarize_scores(ts);
    const Vector av = naive_mat_vec(ts.a, sc.sentences);
    const Vector atu = naive_mat_vec(naive_transpose(ts.a), sc.terms);
    for (std::size_t i = 0; i < av.size(); ++i) EXPECT_NEAR(av[i], sc.sigma * sc.terms[i], 1e-10);
    for (std::size_t j = 0; j < atu.size(); ++j)
        EXPECT_NEAR(atu[j], sc.sigma * sc.sentences[j], 1e-10);
    EXPECT_NEAR(sc.sigma, power_norm2(ts.a), 1e-8);
    const double total = std::accumulate(sc.terms.begin(), sc.terms.end(), 0.0) +
                         std::accumulate(sc.sentences.begin(), sc.sentences.end(), 0.0);
    EXPECT_GE(total, 0.0);
    // Nonnegative matrix: leading singular vectors are of one sign.
    for (double v : sc.sentences) EXPECT_GE(v, -1e-12);
}

TEST(Summarize, OffTopicSentenceRanksLast) {
    const auto ts = ok::build_term_sentence(kSentences, kStop);
    const auto order = ok::top_indices(ok::summarize_scores(ts).sentences, 4);
    EXPECT_EQ(order.back(), 3u);
}

TEST(Summarize, PermutationEquivariant) {
    const auto ts = ok::build_term_sentence(kSentences, kStop);
    const auto base = ok::summarize_scores(ts);
    const std::vector<std::size_t> perm{2, 0, 3, 1};
    ok::TermSentenceMatrix shuffled{ts.terms, Matrix(ts.a.rows(), 4)};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < ts.a.rows(); ++i) shuffled.a(i, j) = ts.a(i, perm[j]);
    const auto sc = ok::summarize_scores(shuffled);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(sc.sentences[j], base.sentences[perm[j]], 1e-10);
    EXPECT_LE(max_abs_diff(sc.terms.span(), base.terms.span()), 1e-10);
}

TEST(Summarize, ZeroRowsDoNotChangeScores) {
    ok::TermSentenceMatrix ts{{"a", "b"}, Matrix{{1, 3, 0}, {2, 1, 1}}};
    ok::TermSentenceMatrix padded{{"a", "b", "c"}, Matrix{{1, 3, 0}, {2, 1, 1}, {0, 0, 0}}};
    const auto x = ok::summarize_scores(ts);
    const auto y = ok::summarize_scores(padded);
    EXPECT_NEAR(x.sigma, y.sigma, 1e-12);
    EXPECT_LE(max_abs_diff(x.sentences.span(), y.sentences.span()), 1e-12);
    EXPECT_NEAR(y.terms[2], 0.0, 1e-12);
}

TEST(TopIndices, DescendingWithStableTies) {
    EXPECT_EQ(ok::top_indices(Vector{0.1, 0.5, 0.5, 0.3}, 3), (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(ok::top_indices(Vector{1, 2}, 5).size(), 2u);
}
