#include <doctest.h>

#include <cmath>

#include "sublime/errors.hpp"
#include "sublime/vectorize.hpp"

using namespace sublime;

namespace {

Benchmark docs(const std::vector<std::string>& texts) {
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < texts.size(); ++i)
        samples.push_back({"d" + std::to_string(i), texts[i], {}});
    return Benchmark("docs", std::move(samples));
}

}  // namespace

TEST_CASE("build_tfidf: common terms get the lowest idf") {
    const TfidfMatrix m = build_tfidf(docs({"a b", "a c"}), 1, 1.0);
    REQUIRE(m.vocab == std::vector<std::string>{"a", "b", "c"});
    CHECK(m.idf[0] < m.idf[1]);
    CHECK(m.idf[1] == m.idf[2]);
}

TEST_CASE("build_tfidf: single-term document normalizes to weight 1") {
    const TfidfMatrix m = build_tfidf(docs({"x x x"}), 1, 1.0);
    REQUIRE(m.vocab.size() == 1);
    REQUIRE(m.rows[0].size() == 1);
    CHECK(m.rows[0][0].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_tfidf: empty vocabulary after filtering is an error") {
    CHECK_THROWS_AS(build_tfidf(docs({"a b", "c d"}), 3, 1.0), EmptyVocabulary);
}

TEST_CASE("build_tfidf: nonzero rows have unit L2 norm, empty docs stay zero") {
    const TfidfMatrix m = build_tfidf(docs({"apple banana apple", "banana cherry", "", "apple"}),
                                      1, 1.0);
    for (std::size_t r = 0; r < m.n_docs(); ++r) {
        double norm_sq = 0.0;
        for (const auto& [term, w] : m.rows[r]) {
            CHECK(w >= 0.0);
            norm_sq += w * w;
        }
        if (m.rows[r].empty())
            CHECK(norm_sq == 0.0);
        else
            CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(m.rows[2].empty());
}

TEST_CASE("build_tfidf: permuting documents permutes rows identically") {
    const TfidfMatrix fwd = build_tfidf(docs({"red green", "green blue", "blue red"}), 1, 1.0);
    const TfidfMatrix rev = build_tfidf(docs({"blue red", "green blue", "red green"}), 1, 1.0);
    REQUIRE(fwd.vocab == rev.vocab);
    CHECK(fwd.rows[0] == rev.rows[2]);
    CHECK(fwd.rows[1] == rev.rows[1]);
    CHECK(fwd.rows[2] == rev.rows[0]);
}

TEST_CASE("build_tfidf: a term present in every document is dropped when max_df_frac < 1") {
    const TfidfMatrix with_stop =
        build_tfidf(docs({"alpha cat dog", "alpha dog fish", "alpha cat fish"}), 1, 0.95);
    for (const auto& term : with_stop.vocab) CHECK(term != "alpha");

    // and the normalized rows match a corpus that never had the term
    const TfidfMatrix clean = build_tfidf(docs({"cat dog", "dog fish", "cat fish"}), 1, 0.95);
    REQUIRE(with_stop.vocab == clean.vocab);
    for (std::size_t r = 0; r < clean.n_docs(); ++r) {
        REQUIRE(with_stop.rows[r].size() == clean.rows[r].size());
        for (std::size_t e = 0; e < clean.rows[r].size(); ++e) {
            CHECK(with_stop.rows[r][e].first == clean.rows[r][e].first);
            CHECK(with_stop.rows[r][e].second ==
                  doctest::Approx(clean.rows[r][e].second).epsilon(1e-12));
        }
    }
}
