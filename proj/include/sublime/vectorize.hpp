#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sublime/corpus.hpp"

namespace sublime {

/// Sparse TFIDF term-document matrix, one row per sample in benchmark order.
/// Rows are L2-normalized (empty documents stay all-zero), vocab is sorted.
struct TfidfMatrix {
    std::vector<std::string> vocab;
    std::vector<double> idf;
    /// Each row: (term index, weight) entries sorted by term index.
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;

    std::size_t n_docs() const { return rows.size(); }
    std::size_t n_terms() const { return vocab.size(); }

    std::vector<std::vector<double>> dense() const;
};

/// tf = raw count / document word count; idf = ln((1+N)/(1+df)) + 1.
/// Terms with document frequency outside [min_df, max_df_frac * N] are
/// dropped. Throws EmptyVocabulary when nothing survives.
TfidfMatrix build_tfidf(const Benchmark& benchmark, std::size_t min_df = 2,
                        double max_df_frac = 0.95);

}  // namespace sublime
