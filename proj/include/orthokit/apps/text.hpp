#pragma once

// Keyword and sentence extraction from the leading singular pair of a
// term-sentence frequency matrix.

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orthokit/matrix.hpp"

namespace orthokit {

struct TermSentenceMatrix {
    std::vector<std::string> terms;  // stems, in order of first appearance
    Matrix a;                        // terms x sentences, counts
};

// Non-empty lines of text.
[[nodiscard]] std::vector<std::string> split_sentences(std::string_view text);

// Whitespace-separated words, lowercased, with ASCII punctuation removed.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view sentence);

// Strips one of -ing, -ed or a plural -s (not -ss), then a trailing -e,
// never leaving fewer than three characters.
[[nodiscard]] std::string stem(std::string_view word);

// Stopwords are matched against lowercased tokens before stemming.
[[nodiscard]] TermSentenceMatrix build_term_sentence(std::span<const std::string> sentences,
                                                     const std::set<std::string>& stopwords);

struct SummaryScores {
    Vector terms;      // u_1
    Vector sentences;  // v_1
    double sigma = 0.0;
};

// Leading singular pair, signed so that the entries sum to a nonnegative
// value.
[[nodiscard]] SummaryScores summarize_scores(const TermSentenceMatrix& ts);

// Indices of the `count` largest scores, descending, lower index first on ties.
[[nodiscard]] std::vector<std::size_t> top_indices(const Vector& scores, std::size_t count);

}  // namespace orthokit
