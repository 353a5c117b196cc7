#include <doctest.h>

#include <cmath>
#include <vector>

#include "sublime/errors.hpp"
#include "sublime/rng.hpp"
#include "sublime/textstats.hpp"

using namespace sublime;

TEST_CASE("tokenize: hand-checked counts") {
    SUBCASE("Can pigs fly?") {
        const TokenStats s = tokenize("Can pigs fly?");
        CHECK(s.n_words == 3);
        CHECK(s.n_sentences == 1);
        CHECK(s.n_syllables == 3);
    }
    SUBCASE("empty text gives all zeros") {
        const TokenStats s = tokenize("");
        CHECK(s.n_words == 0);
        CHECK(s.n_sentences == 0);
        CHECK(s.n_syllables == 0);
        CHECK(s.n_periods == 0);
    }
    SUBCASE("Ab cd.") {
        const TokenStats s = tokenize("Ab cd.");
        CHECK(s.n_upper == 1);
        CHECK(s.n_lower == 3);
        CHECK(s.n_vowels == 1);
        CHECK(s.n_consonants == 3);
        CHECK(s.n_periods == 1);
        CHECK(s.n_sentences == 1);
    }
    SUBCASE("sentence floor: words without a terminator still count one") {
        CHECK(tokenize("hello world").n_sentences == 1);
    }
    SUBCASE("syllable floor is 1 per word") {
        CHECK(syllable_count("tsk") == 1);
        CHECK(syllable_count("banana") == 3);
        CHECK(syllable_count("fly") == 1);
    }
}

TEST_CASE("quality_profile: hand-checked formulas") {
    const WordSet dict{"can", "pigs", "fly", "a", "b"};

    SUBCASE("lexical diversity and repeating words for {a,a,b}") {
        const TokenStats s = tokenize("a a b");
        const QualityProfile q = quality_profile(s, dict);
        CHECK(q.lexical_diversity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(q.repeating_words == 1);
    }
    SUBCASE("spelling errors and average word length") {
        const QualityProfile q = quality_profile(tokenize("Can pigs fly?"), dict);
        CHECK(q.spelling_errors == 0);
        CHECK(q.avg_word_length == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("cpd for Ab cd.") {
        const QualityProfile q = quality_profile(tokenize("Ab cd."), dict);
        CHECK(q.cpd == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    }
    SUBCASE("out-of-dictionary words are spelling errors") {
        const QualityProfile q = quality_profile(tokenize("can zzyx fly"), dict);
        CHECK(q.spelling_errors == 1);
    }
}

TEST_CASE("readability_profile: hand-checked formulas") {
    const WordSet easy{"can", "pig", "fly", "a"};

    SUBCASE("Can pigs fly? with every word easy") {
        // "pigs" resolves through the -s strip to "pig".
        const ReadabilityProfile r = readability_profile(tokenize("Can pigs fly?"), easy);
        CHECK(r.difficult_pct == doctest::Approx(0.0));
        CHECK(r.dale_chall == doctest::Approx(0.1488).epsilon(1e-9));
        CHECK(r.flesch == doctest::Approx(119.19).epsilon(1e-9));
        CHECK(r.gunning_fog == doctest::Approx(1.2).epsilon(1e-9));
    }
    SUBCASE("single word 'a'") {
        const ReadabilityProfile r = readability_profile(tokenize("a"), easy);
        CHECK(r.flesch == doctest::Approx(206.835 - 1.015 - 84.6).epsilon(1e-12));
    }
    SUBCASE("empty text is an error") {
        CHECK_THROWS_AS(readability_profile(tokenize(""), easy), EmptyText);
    }
    SUBCASE("easy query scores easier than a hard query") {
        const ReadabilityProfile easy_q = readability_profile(tokenize("Can pigs fly?"), easy);
        const ReadabilityProfile hard_q = readability_profile(
            tokenize("The illustrious university administration deliberated interminably "
                     "regarding multidisciplinary undergraduate matriculation requirements."),
            easy);
        CHECK(easy_q.gunning_fog < hard_q.gunning_fog);
        CHECK(easy_q.dale_chall < hard_q.dale_chall);
    }
}

TEST_CASE("readability: appending a hard word strictly raises the difficulty indices") {
    const WordSet easy{"the", "cat", "sat", "on", "mat", "a"};
    const std::string base = "The cat sat on the mat.";
    const std::string harder = base + " Extraordinary.";
    const ReadabilityProfile r0 = readability_profile(tokenize(base), easy);
    const ReadabilityProfile r1 = readability_profile(tokenize(harder), easy);
    CHECK(r1.difficult_pct > r0.difficult_pct);
    CHECK(r1.dale_chall > r0.dale_chall);
    CHECK(r1.gunning_fog > r0.gunning_fog);
}

TEST_CASE("flesch strictly decreases as syllables per word rise at fixed words/sentence") {
    const WordSet easy{"a"};
    // same word/sentence shape, increasing syllable load
    const ReadabilityProfile light = readability_profile(tokenize("cat dog fox."), easy);
    const ReadabilityProfile heavy = readability_profile(tokenize("banana potato tomato."), easy);
    CHECK(heavy.flesch < light.flesch);
}

TEST_CASE("difficulty_scores: min-max composite") {
    const WordSet easy{"a"};
    SUBCASE("projection onto one metric gives 0 and 1") {
        ReadabilityProfile lo;
        lo.gunning_fog = 1.2;
        ReadabilityProfile hi;
        hi.gunning_fog = 23.9;
        const auto scores = difficulty_scores({lo, hi}, {0, 0, 0, 1});
        CHECK(scores[0] == doctest::Approx(0.0));
        CHECK(scores[1] == doctest::Approx(1.0));
    }
    SUBCASE("all-equal profiles score equal") {
        ReadabilityProfile p;
        p.difficult_pct = 0.3;
        p.dale_chall = 5;
        p.flesch = 80;
        p.gunning_fog = 9;
        const auto scores = difficulty_scores({p, p, p});
        CHECK(scores[0] == scores[1]);
        CHECK(scores[1] == scores[2]);
    }
    SUBCASE("weight on a constant metric contributes nothing") {
        ReadabilityProfile a;
        a.difficult_pct = 0.0;
        ReadabilityProfile b;
        b.difficult_pct = 1.0;
        a.flesch = b.flesch = 100.0;
        const auto scores = difficulty_scores({a, b}, {1, 0, 1, 0});
        CHECK(scores[0] == doctest::Approx(0.0));
        CHECK(scores[1] == doctest::Approx(0.5));  // flesch term degenerate, only dp active
    }
}

TEST_CASE("property: appending a hard word raises fog, dale-chall and difficult_pct") {
    const std::vector<std::string> pool{"the", "cat", "ran", "to", "a", "dog", "it", "was", "fun"};
    const WordSet easy(pool.begin(), pool.end());
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::string text = pool[rng.bounded(pool.size())];
        const std::size_t extra = rng.bounded(12);
        for (std::size_t w = 0; w < extra; ++w) text += " " + pool[rng.bounded(pool.size())];
        const ReadabilityProfile before = readability_profile(tokenize(text), easy);
        const ReadabilityProfile after =
            readability_profile(tokenize(text + " incomprehensibility"), easy);
        CHECK(after.gunning_fog > before.gunning_fog);
        CHECK(after.dale_chall > before.dale_chall);
        CHECK(after.difficult_pct > before.difficult_pct);
    }
}

TEST_CASE("metrics are pure functions of the text") {
    const WordSet dict{"alpha", "beta"};
    const std::string text = "Alpha beta? Alpha!";
    const QualityProfile q1 = quality_profile(tokenize(text), dict);
    const QualityProfile q2 = quality_profile(tokenize(text), dict);
    CHECK(q1.cpd == q2.cpd);
    CHECK(q1.lexical_diversity == q2.lexical_diversity);
    CHECK(q1.avg_word_length == q2.avg_word_length);
}
