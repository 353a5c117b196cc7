#include "sublime/textstats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "sublime/errors.hpp"

namespace sublime {

namespace {

bool is_ascii_letter(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Non-ASCII bytes count as word bytes so UTF-8 sequences never split a word.
bool is_word_byte(unsigned char c) {
    return is_ascii_letter(c) || is_ascii_digit(c) || c == '\'' || c >= 0x80;
}

bool is_sentence_end(unsigned char c) { return c == '.' || c == '!' || c == '?'; }

char fold(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

bool is_vowel(unsigned char c) {
    const char f = fold(c);
    return f == 'a' || f == 'e' || f == 'i' || f == 'o' || f == 'u';
}

std::string fold_word(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (unsigned char c : word) out.push_back(fold(c));
    return out;
}

}  // namespace

std::size_t syllable_count(std::string_view word) {
    if (word.empty()) return 0;
    std::size_t groups = 0;
    bool in_group = false;
    for (unsigned char c : word) {
        const char f = fold(c);
        const bool vowelish = is_vowel(c) || f == 'y';
        if (vowelish && !in_group) ++groups;
        in_group = vowelish;
    }
    return std::max<std::size_t>(groups, 1);
}

TokenStats tokenize(std::string_view text) {
    TokenStats stats;
    std::unordered_set<std::string> unique;

    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = text[i];
        if (is_word_byte(c)) {
            std::size_t j = i;
            while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
            std::string_view word = text.substr(i, j - i);
            stats.n_syllables += syllable_count(word);
            unique.insert(fold_word(word));
            stats.words.emplace_back(word);
            i = j;
        } else {
            if (is_sentence_end(c)) {
                std::size_t j = i;
                while (j < text.size() && is_sentence_end(static_cast<unsigned char>(text[j]))) ++j;
                ++stats.n_sentences;
                i = j;
                continue;
            }
            ++i;
        }
    }

    for (unsigned char c : text) {
        if (c == '.') ++stats.n_periods;
        if (c >= 'A' && c <= 'Z') ++stats.n_upper;
        if (c >= 'a' && c <= 'z') ++stats.n_lower;
        if (is_ascii_letter(c)) {
            if (is_vowel(c))
                ++stats.n_vowels;
            else
                ++stats.n_consonants;
        }
    }

    stats.n_words = stats.words.size();
    stats.n_unique_words = unique.size();
    if (stats.n_words > 0 && stats.n_sentences == 0) stats.n_sentences = 1;
    return stats;
}

WordSet load_word_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open word list: " + path.string());
    WordSet out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.insert(fold_word(line));
    }
    return out;
}

QualityProfile quality_profile(const TokenStats& stats, const WordSet& dictionary,
                               const CpdWeights& weights) {
    QualityProfile p;
    if (stats.n_words > 0) {
        std::size_t total_len = 0;
        for (const auto& w : stats.words) {
            total_len += w.size();
            if (dictionary.find(fold_word(w)) == dictionary.end()) ++p.spelling_errors;
        }
        p.avg_word_length = static_cast<double>(total_len) / static_cast<double>(stats.n_words);
        p.lexical_diversity =
            static_cast<double>(stats.n_unique_words) / static_cast<double>(stats.n_words);
        p.repeating_words = stats.n_words - stats.n_unique_words;
    }

    const double wordform = static_cast<double>(stats.n_upper) /
                            static_cast<double>(std::max<std::size_t>(1, stats.n_lower));
    const double vcr = static_cast<double>(stats.n_vowels) /
                       static_cast<double>(std::max<std::size_t>(1, stats.n_consonants));
    const double nop = static_cast<double>(stats.n_periods) /
                       static_cast<double>(std::max<std::size_t>(1, stats.n_sentences));
    const double wsum = weights.wordform + weights.vcr + weights.nop;
    p.cpd = (weights.wordform * wordform + weights.vcr * vcr + weights.nop * nop) / wsum;
    return p;
}

namespace {

bool is_easy_word(const std::string& folded, const WordSet& easy_words) {
    if (easy_words.count(folded)) return true;
    const auto ends_with = [&](std::string_view suffix) {
        return folded.size() > suffix.size() &&
               folded.compare(folded.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    for (std::string_view suffix : {std::string_view("s"), std::string_view("es"),
                                    std::string_view("ed"), std::string_view("ing")}) {
        if (ends_with(suffix) &&
            easy_words.count(folded.substr(0, folded.size() - suffix.size())))
            return true;
    }
    return false;
}

}  // namespace

ReadabilityProfile readability_profile(const TokenStats& stats, const WordSet& easy_words) {
    if (stats.n_words == 0) throw EmptyText();

    std::size_t difficult = 0;
    std::size_t complex_words = 0;
    for (const auto& w : stats.words) {
        if (!is_easy_word(fold_word(w), easy_words)) ++difficult;
        if (syllable_count(w) >= 3) ++complex_words;
    }

    const double n_words = static_cast<double>(stats.n_words);
    const double words_per_sentence = n_words / static_cast<double>(stats.n_sentences);
    const double syllables_per_word = static_cast<double>(stats.n_syllables) / n_words;

    ReadabilityProfile p;
    p.difficult_pct = static_cast<double>(difficult) / n_words;
    p.dale_chall = 0.1579 * (p.difficult_pct * 100.0) + 0.0496 * words_per_sentence;
    p.flesch = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
    p.gunning_fog =
        0.4 * (words_per_sentence + 100.0 * static_cast<double>(complex_words) / n_words);
    return p;
}

std::vector<double> difficulty_scores(const std::vector<ReadabilityProfile>& profiles,
                                      const std::array<double, 4>& weights) {
    const std::size_t n = profiles.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;

    const double wsum = weights[0] + weights[1] + weights[2] + weights[3];
    if (!(wsum > 0.0)) throw Error("difficulty weights must sum to a positive value");

    // Metric extractors, oriented so that higher = harder.
    const auto value = [](const ReadabilityProfile& p, std::size_t metric) {
        switch (metric) {
            case 0: return p.difficult_pct;
            case 1: return p.dale_chall;
            case 2: return -p.flesch;
            default: return p.gunning_fog;
        }
    };

    for (std::size_t metric = 0; metric < 4; ++metric) {
        if (weights[metric] == 0.0) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& p : profiles) {
            lo = std::min(lo, value(p, metric));
            hi = std::max(hi, value(p, metric));
        }
        const double span = hi - lo;
        if (span <= 0.0) continue;  // constant metric contributes nothing
        for (std::size_t i = 0; i < n; ++i)
            out[i] += weights[metric] * (value(profiles[i], metric) - lo) / span;
    }
    for (double& v : out) v /= wsum;
    return out;
}

}  // namespace sublime
