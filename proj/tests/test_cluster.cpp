#include <doctest.h>

#include <cmath>
#include <set>

#include "sublime/cluster.hpp"
#include "sublime/errors.hpp"
#include "sublime/rng.hpp"
#include "sublime/vectorize.hpp"

using namespace sublime;

namespace {

Benchmark docs(const std::vector<std::string>& texts) {
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < texts.size(); ++i)
        samples.push_back({"d" + std::to_string(i), texts[i], {}});
    return Benchmark("docs", std::move(samples));
}

bool nonincreasing(const std::vector<double>& trace, double tol = 1e-9) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] > trace[i - 1] + tol) return false;
    return true;
}

// Two angular chains in orthogonal planes: consecutive points are each
// other's nearest neighbors, so each group forms one mutual-kNN component.
EmbeddingSet planted_embeddings(std::size_t per_group, double step = 0.05) {
    EmbeddingSet set;
    set.dim = 3;
    for (std::size_t i = 0; i < per_group; ++i) {
        const double theta = step * static_cast<double>(i);
        set.vectors["s" + std::to_string(i)] = {std::cos(theta), std::sin(theta), 0.0};
        set.vectors["s" + std::to_string(per_group + i)] = {0.0, std::sin(theta),
                                                            std::cos(theta)};
    }
    return set;
}

}  // namespace

TEST_CASE("kmeans separates well-separated 1-D points") {
    const std::vector<std::vector<double>> rows{{0.0}, {0.1}, {10.0}, {10.1}};
    const ClusterAssignment a = kmeans(rows, 2, 42);
    CHECK(a.labels[0] == a.labels[1]);
    CHECK(a.labels[2] == a.labels[3]);
    CHECK(a.labels[0] != a.labels[2]);
}

TEST_CASE("kmeans with k = N gives singleton clusters and zero inertia") {
    const std::vector<std::vector<double>> rows{{0.0}, {1.0}, {2.0}, {5.0}};
    const ClusterAssignment a = kmeans(rows, rows.size(), 1);
    std::set<int> labels(a.labels.begin(), a.labels.end());
    CHECK(labels.size() == rows.size());
    CHECK(a.objective_trace.back() == doctest::Approx(0.0));
}

TEST_CASE("kmeans is deterministic for a fixed seed and rejects k > N") {
    const std::vector<std::vector<double>> rows{{0.0, 1.0}, {2.0, 3.0}, {4.0, 0.0}};
    const ClusterAssignment a = kmeans(rows, 2, 7);
    const ClusterAssignment b = kmeans(rows, 2, 7);
    CHECK(a.labels == b.labels);
    CHECK(a.rank_value == b.rank_value);
    CHECK(a.objective_trace == b.objective_trace);
    CHECK_THROWS_AS(kmeans(rows, 4, 7), BadK);
}

TEST_CASE("kmeans inertia trace is monotone nonincreasing over random instances") {
    Rng rng(123);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 20 + rng.bounded(30);
        const std::size_t d = 2 + rng.bounded(4);
        std::vector<std::vector<double>> rows(n, std::vector<double>(d));
        for (auto& row : rows)
            for (double& x : row) x = rng.next_unit() * 10.0;
        const std::size_t k = 2 + rng.bounded(5);
        const ClusterAssignment a = kmeans(rows, std::min(k, n), trial);
        CHECK(nonincreasing(a.objective_trace));
    }
}

TEST_CASE("nmf separates a 2x2 identity and keeps a nonincreasing error trace") {
    // Oracle: rank-2 factorization of I2 is exact; optimal factors place the
    // two samples on distinct topics, so labels must differ.
    const TfidfMatrix m = build_tfidf(docs({"aaa", "bbb"}), 1, 1.0);
    REQUIRE(m.vocab.size() == 2);
    const ClusterAssignment a = nmf_topics(m, 2, 3);
    CHECK(a.labels[0] != a.labels[1]);
    CHECK(nonincreasing(a.objective_trace));
    CHECK(a.objective_trace.back() < 1e-3);
}

TEST_CASE("nmf error trace nonincreasing over random corpora") {
    Rng rng(5);
    const std::vector<std::string> words{"cat", "dog", "fish", "bird", "tree", "rock",
                                         "sun",  "sky", "sea",  "ant",  "fox",  "owl"};
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::string> texts;
        const std::size_t n_docs = 6 + rng.bounded(6);
        for (std::size_t d = 0; d < n_docs; ++d) {
            std::string text;
            const std::size_t len = 3 + rng.bounded(8);
            for (std::size_t w = 0; w < len; ++w) {
                if (!text.empty()) text += ' ';
                text += words[rng.bounded(words.size())];
            }
            texts.push_back(text);
        }
        const TfidfMatrix m = build_tfidf(docs(texts), 1, 1.0);
        const std::size_t k = 2 + rng.bounded(3);
        const ClusterAssignment a =
            nmf_topics(m, std::min({k, m.n_docs(), m.n_terms()}), trial, 80);
        CHECK(nonincreasing(a.objective_trace));
    }
}

TEST_CASE("nmf degenerate cases") {
    const TfidfMatrix m = build_tfidf(docs({"aa bb", "aa cc", "bb cc"}), 1, 1.0);
    const ClusterAssignment one = nmf_topics(m, 1, 9);
    for (int label : one.labels) CHECK(label == 0);
}

TEST_CASE("lda recovers disjoint-vocabulary groups (majority vote, 3 seeds)") {
    const Benchmark corpus = docs({
        "apple banana cherry apple banana", "banana apple cherry cherry apple",
        "cherry apple apple banana banana", "apple cherry banana apple cherry",
        "engine piston gearbox engine piston", "piston engine gearbox gearbox engine",
        "gearbox piston engine piston piston", "engine gearbox piston gearbox engine",
    });
    int successes = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        const ClusterAssignment a = lda_topics(corpus, 2, seed, 150);
        // majority label per group must differ
        int group_a = 0, group_b = 0;
        for (int i = 0; i < 4; ++i) group_a += a.labels[i];
        for (int i = 4; i < 8; ++i) group_b += a.labels[i];
        const int majority_a = group_a >= 2 ? 1 : 0;
        const int majority_b = group_b >= 2 ? 1 : 0;
        if (majority_a != majority_b) ++successes;
    }
    CHECK(successes >= 2);
}

TEST_CASE("lda: k=1 gives label 0 and proportion 1; same seed is reproducible") {
    const Benchmark corpus = docs({"apple banana", "cherry apple"});
    const ClusterAssignment one = lda_topics(corpus, 1, 5);
    for (int label : one.labels) CHECK(label == 0);
    for (double p : one.rank_value) CHECK(p == doctest::Approx(1.0));

    const ClusterAssignment a = lda_topics(corpus, 2, 17, 50);
    const ClusterAssignment b = lda_topics(corpus, 2, 17, 50);
    CHECK(a.labels == b.labels);
    CHECK(a.rank_value == b.rank_value);
}

TEST_CASE("jacobi_eigen matches a hand-diagonalizable matrix") {
    // eigenvalues of [[2,1],[1,2]] are 1 and 3
    const EigenDecomposition e = jacobi_eigen({{2, 1}, {1, 2}});
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spectral clustering on two well-separated groups") {
    const std::size_t per_group = 8;
    const EmbeddingSet set = planted_embeddings(per_group);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < 2 * per_group; ++i) ids.push_back("s" + std::to_string(i));

    SpectralDiagnostics diag;
    const ClusterAssignment a = spectral_clusters(set, ids, 2, 3, 1, &diag);

    // block-diagonal Laplacian: two (near-)zero eigenvalues
    CHECK(std::abs(diag.eigenvalues[0]) <= 1e-8);
    CHECK(std::abs(diag.eigenvalues[1]) <= 1e-8);

    for (std::size_t i = 1; i < per_group; ++i) CHECK(a.labels[i] == a.labels[0]);
    for (std::size_t i = per_group + 1; i < 2 * per_group; ++i)
        CHECK(a.labels[i] == a.labels[per_group]);
    CHECK(a.labels[0] != a.labels[per_group]);
}

TEST_CASE("spectral: Laplacian eigenvalues stay within [0, 2] and residuals are tiny") {
    const EmbeddingSet set = planted_embeddings(6);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < 12; ++i) ids.push_back("s" + std::to_string(i));

    SpectralDiagnostics diag;
    spectral_clusters(set, ids, 3, 4, 2, &diag);

    const EigenDecomposition full = jacobi_eigen(diag.laplacian);
    for (double value : full.eigenvalues) {
        CHECK(value >= -1e-8);
        CHECK(value <= 2.0 + 1e-8);
    }
    // residual ||L v - lambda v||_inf for every returned pair
    for (std::size_t e = 0; e < full.eigenvalues.size(); ++e) {
        double residual = 0.0;
        for (std::size_t i = 0; i < diag.laplacian.size(); ++i) {
            double lv = 0.0;
            for (std::size_t j = 0; j < diag.laplacian.size(); ++j)
                lv += diag.laplacian[i][j] * full.eigenvectors[e][j];
            residual = std::max(residual,
                                std::abs(lv - full.eigenvalues[e] * full.eigenvectors[e][i]));
        }
        CHECK(residual <= 1e-7);
    }
}

TEST_CASE("spectral: identical vectors collapse to one cluster") {
    EmbeddingSet set;
    set.dim = 2;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < 6; ++i) {
        ids.push_back("s" + std::to_string(i));
        set.vectors[ids.back()] = {1.0, 1.0};
    }
    const ClusterAssignment a = spectral_clusters(set, ids, 2, 2, 3);
    for (int label : a.labels) CHECK(label == a.labels[0]);
}

TEST_CASE("spectral: determinism and BadK") {
    const EmbeddingSet set = planted_embeddings(5);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < 10; ++i) ids.push_back("s" + std::to_string(i));
    const ClusterAssignment a = spectral_clusters(set, ids, 2, 3, 9);
    const ClusterAssignment b = spectral_clusters(set, ids, 2, 3, 9);
    CHECK(a.labels == b.labels);
    CHECK(a.rank_value == b.rank_value);
    CHECK_THROWS_AS(spectral_clusters(set, ids, 11, 3, 9), BadK);
}

TEST_CASE("default_cluster_count heuristic") {
    CHECK(default_cluster_count(200) == 10);  // round(sqrt(100)) = 10
    CHECK(default_cluster_count(8) == 2);
    CHECK(default_cluster_count(100000) == 25);
    CHECK(default_cluster_count(1) == 1);
}
