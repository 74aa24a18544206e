#include "orthokit/apps/text.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "orthokit/error.hpp"
#include "orthokit/svd.hpp"

namespace orthokit {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \t") != std::string_view::npos) {
            out.emplace_back(line);
        }
        start = end + 1;
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    };
    for (char ch : sentence) {
        const auto uc = static_cast<unsigned char>(ch);
        if (std::isspace(uc)) {
            flush();
        } else if (uc < 0x80 && std::ispunct(uc)) {
            continue;
        } else {
            current.push_back(static_cast<char>(std::tolower(uc)));
        }
    }
    flush();
    return tokens;
}

std::string stem(std::string_view word) {
    std::string w(word);
    if (ends_with(w, "ing") && w.size() >= 6) {
        w.resize(w.size() - 3);
    } else if (ends_with(w, "ed") && w.size() >= 5) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() >= 4) {
        w.resize(w.size() - 1);
    }
    if (ends_with(w, "e") && w.size() >= 4) {
        w.resize(w.size() - 1);
    }
    return w;
}

TermSentenceMatrix build_term_sentence(std::span<const std::string> sentences,
                                       const std::set<std::string>& stopwords) {
    if (sentences.empty()) {
        throw InvalidArgument("build_term_sentence: no sentences");
    }
    std::vector<std::string> terms;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> occurrences(sentences.size());
    for (std::size_t j = 0; j < sentences.size(); ++j) {
        for (const std::string& token : tokenize(sentences[j])) {
            if (stopwords.contains(token)) {
                continue;
            }
            std::string s = stem(token);
            auto [it, inserted] = index.try_emplace(std::move(s), terms.size());
            if (inserted) {
                terms.push_back(it->first);
            }
            occurrences[j].push_back(it->second);
        }
    }
    if (terms.empty()) {
        throw InvalidArgument("build_term_sentence: no terms left after stopword removal");
    }
    TermSentenceMatrix ts;
    ts.terms = std::move(terms);
    ts.a = Matrix(ts.terms.size(), sentences.size());
    for (std::size_t j = 0; j < sentences.size(); ++j) {
        for (std::size_t i : occurrences[j]) {
            ts.a(i, j) += 1.0;
        }
    }
    return ts;
}

SummaryScores summarize_scores(const TermSentenceMatrix& ts) {
    if (ts.a.empty() || max_abs(ts.a) == 0.0) {
        throw InvalidArgument("summarize_scores: term-sentence matrix is zero");
    }
    const SvdFactorization f = svd(ts.a, SvdShape::reduced);
    SummaryScores out;
    out.terms = f.u.get_column(0);
    out.sentences = f.vt.get_row(0);
    out.sigma = f.sigma[0];
    const double total = std::accumulate(out.terms.begin(), out.terms.end(), 0.0) +
                         std::accumulate(out.sentences.begin(), out.sentences.end(), 0.0);
    if (total < 0.0) {
        out.terms = -1.0 * out.terms;
        out.sentences = -1.0 * out.sentences;
    }
    return out;
}

std::vector<std::size_t> top_indices(const Vector& scores, std::size_t count) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(std::min(count, order.size()));
    return order;
}

}  // namespace orthokit
