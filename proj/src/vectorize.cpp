#include "sublime/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sublime/errors.hpp"
#include "sublime/textstats.hpp"

namespace sublime {

std::vector<std::vector<double>> TfidfMatrix::dense() const {
    std::vector<std::vector<double>> out(rows.size(), std::vector<double>(vocab.size(), 0.0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [term, weight] : rows[r]) out[r][term] = weight;
    return out;
}

namespace {

std::string fold_ascii(const std::string& w) {
    std::string out = w;
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace

TfidfMatrix build_tfidf(const Benchmark& benchmark, std::size_t min_df, double max_df_frac) {
    const std::size_t n = benchmark.size();
    if (n == 0) throw EmptyPool();
    if (!(max_df_frac > 0.0 && max_df_frac <= 1.0))
        throw Error("max_df_frac must be in (0, 1]");

    // Per-document folded token counts plus total token count.
    std::vector<std::map<std::string, std::size_t>> doc_counts(n);
    std::vector<std::size_t> doc_lengths(n, 0);
    std::map<std::string, std::size_t> df;
    for (std::size_t d = 0; d < n; ++d) {
        const TokenStats stats = tokenize(benchmark.at(d).text);
        doc_lengths[d] = stats.n_words;
        for (const auto& w : stats.words) ++doc_counts[d][fold_ascii(w)];
        for (const auto& [term, count] : doc_counts[d]) ++df[term];
    }

    const double max_df = max_df_frac * static_cast<double>(n);
    TfidfMatrix out;
    std::map<std::string, std::size_t> term_index;
    for (const auto& [term, freq] : df) {
        if (freq < min_df || static_cast<double>(freq) > max_df) continue;
        term_index.emplace(term, out.vocab.size());
        out.vocab.push_back(term);
        out.idf.push_back(std::log((1.0 + static_cast<double>(n)) /
                                   (1.0 + static_cast<double>(freq))) +
                          1.0);
    }
    if (out.vocab.empty()) throw EmptyVocabulary();

    out.rows.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        auto& row = out.rows[d];
        for (const auto& [term, count] : doc_counts[d]) {
            auto it = term_index.find(term);
            if (it == term_index.end()) continue;
            const double tf =
                static_cast<double>(count) / static_cast<double>(doc_lengths[d]);
            row.emplace_back(it->second, tf * out.idf[it->second]);
        }
        double norm_sq = 0.0;
        for (const auto& [term, weight] : row) norm_sq += weight * weight;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& [term, weight] : row) weight *= inv;
        }
    }
    return out;
}

}  // namespace sublime
