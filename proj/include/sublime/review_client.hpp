#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace sublime {

/// Everything the reviewer sees about one candidate pair.
struct ReviewItem {
    std::string problem_a;
    std::string solution_a;
    std::string problem_b;
    std::string solution_b;
};

/// Chat-completions client for the pair-similarity review stage. Responses
/// are cached on disk by request hash, so reruns are offline and byte-stable.
class ReviewClient {
public:
    struct Options {
        std::string url;            // full endpoint URL, e.g. http://host:8000/v1/chat/completions
        std::string model = "gpt-4";
        std::string token;          // bearer token; empty sends no auth header
        std::filesystem::path cache_dir;  // empty disables the cache
        int max_retries = 3;
        int backoff_ms = 250;
        int max_in_flight = 4;
        int timeout_s = 60;
    };

    explicit ReviewClient(Options options);

    /// Single review; returns the 0..5 similarity score. Throws
    /// ReviewUnavailable after exhausted retries and ReviewParseError on
    /// malformed responses.
    int review(const ReviewItem& item);

    /// Reviews in order with bounded concurrency; result[i] matches items[i].
    std::vector<int> review_all(const std::vector<ReviewItem>& items);

    /// HTTP requests actually sent (cache hits excluded).
    std::size_t network_calls() const { return network_calls_.load(); }

    static std::string build_prompt(const ReviewItem& item);

    /// First integer 0..5 after the literal "Similarity:" marker.
    static int parse_similarity(const std::string& content);

private:
    std::string request_body(const ReviewItem& item) const;
    std::string fetch(const std::string& body);

    Options options_;
    std::atomic<std::size_t> network_calls_{0};
};

}  // namespace sublime
