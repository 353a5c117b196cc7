#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sublime {

/// Token-level counts for one text. All metrics derive from these.
///
/// Tokenization rules (every formula depends on them, so they are pinned):
///  - words: maximal runs of letters, digits and apostrophes
///  - sentences: maximal runs of '.', '!', '?'; at least 1 when words exist
///  - syllables: maximal vowel groups over {a,e,i,o,u,y} per word, floor 1
struct TokenStats {
    std::vector<std::string> words;
    std::size_t n_words = 0;
    std::size_t n_sentences = 0;
    std::size_t n_syllables = 0;
    std::size_t n_unique_words = 0;  // case-folded
    std::size_t n_periods = 0;       // '.' characters
    std::size_t n_upper = 0;
    std::size_t n_lower = 0;
    std::size_t n_vowels = 0;      // a,e,i,o,u (case-insensitive)
    std::size_t n_consonants = 0;  // remaining letters
};

TokenStats tokenize(std::string_view text);

/// Vowel-group count over {a,e,i,o,u,y}, minimum 1 for a nonempty word.
std::size_t syllable_count(std::string_view word);

using WordSet = std::unordered_set<std::string>;

/// One lowercase word per line, UTF-8. '#' lines and blanks are skipped.
WordSet load_word_set(const std::filesystem::path& path);

/// Relative weights of the three CPD constituents (wordform ratio,
/// vowel-consonant ratio, normalized period count). Equal thirds by default.
struct CpdWeights {
    double wordform = 1.0;
    double vcr = 1.0;
    double nop = 1.0;
};

struct QualityProfile {
    std::size_t spelling_errors = 0;
    double avg_word_length = 0.0;
    std::size_t repeating_words = 0;
    double lexical_diversity = 0.0;
    double cpd = 0.0;
};

QualityProfile quality_profile(const TokenStats& stats, const WordSet& dictionary,
                               const CpdWeights& weights = {});

struct ReadabilityProfile {
    double difficult_pct = 0.0;
    double dale_chall = 0.0;
    double flesch = 0.0;
    double gunning_fog = 0.0;
};

/// A word is easy when it, or its -s/-es/-ed/-ing stripped base, appears in
/// `easy_words` (regular inflections count as familiar). Throws EmptyText on
/// wordless input.
ReadabilityProfile readability_profile(const TokenStats& stats, const WordSet& easy_words);

/// Composite difficulty per sample: weighted sum of min-max normalized
/// difficult_pct, dale_chall, -flesch and gunning_fog over the benchmark.
/// A metric that is constant across the benchmark contributes 0.
std::vector<double> difficulty_scores(const std::vector<ReadabilityProfile>& profiles,
                                      const std::array<double, 4>& weights = {1, 1, 1, 1});

}  // namespace sublime
