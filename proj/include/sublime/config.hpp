#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sublime/sampler.hpp"
#include "sublime/textstats.hpp"

namespace sublime {

struct BenchmarkConfig {
    std::string name;
    std::filesystem::path path;
    std::filesystem::path results;                           // optional
    std::map<std::string, std::filesystem::path> embeddings; // tag -> jsonl
};

struct ClusterConfig {
    std::size_t k = 0;  // 0 selects the sqrt(N/2) heuristic
    std::size_t n_neighbors = 10;
    std::size_t kmeans_iters = 100;
    std::size_t nmf_iters = 200;
    std::size_t lda_iters = 200;
    double alpha = -1.0;  // -1 selects 50/k
    double beta = 0.01;
};

struct TfidfConfig {
    std::size_t min_df = 2;
    double max_df_frac = 0.95;
};

struct RedundancyConfig {
    double tau = 0.8;
    double factor = 4.0;
    int review_threshold = 4;
    bool complexity_enabled = true;
    bool review_enabled = true;
    bool unknown_passes = false;
    std::string embedding_tag;  // empty: first tag of each benchmark
    std::string review_url;
    std::string review_model = "gpt-4";
    std::filesystem::path cache_dir;
    std::filesystem::path fingerprints;  // optional precomputed jsonl
    std::filesystem::path pairs;         // optional precomputed pairs jsonl
    std::string runner_cmd;              // optional local fingerprint runner
    std::string solution_field = "solution";
    std::string tests_field = "tests";
    int max_in_flight = 4;
    double pearson_threshold = 0.9;  // MR-vs-M comparison target
};

/// One declarative run description; CLI flags override a few fields.
struct RunConfig {
    std::string text_field = "text";
    std::vector<BenchmarkConfig> benchmarks;
    std::vector<MethodSpec> methods;
    std::vector<int> rates;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    int window_lo = 5;
    int window_hi = 25;
    double adaptive_threshold = 0.9;
    std::array<double, 4> difficulty_weights = {1, 1, 1, 1};
    CpdWeights cpd_weights;
    std::filesystem::path easy_words;
    std::filesystem::path english_words;
    ClusterConfig cluster;
    TfidfConfig tfidf;
    RedundancyConfig redundancy;
    std::filesystem::path out_dir = "out";
    unsigned jobs = 1;

    /// Parses the JSON config; relative paths resolve against the file's
    /// directory. Throws SchemaError on malformed or inconsistent content.
    static RunConfig load(const std::filesystem::path& path);

    /// The resolved configuration plus tool version, written into every
    /// output directory for provenance.
    std::string resolved_json() const;
};

}  // namespace sublime
