#include "sublime/review_client.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"
#include "sublime/rng.hpp"

namespace sublime {

using nlohmann::json;

ReviewClient::ReviewClient(Options options) : options_(std::move(options)) {
    if (!options_.cache_dir.empty()) std::filesystem::create_directories(options_.cache_dir);
}

std::string ReviewClient::build_prompt(const ReviewItem& item) {
    std::ostringstream out;
    out << "You are reviewing two coding benchmark entries for redundancy.\n"
        << "Analyze them in detail: problem understanding, solution approach, complexity, "
           "code structure, edge cases, and constraints.\n"
        << "Then assign a similarity score between 0 and 5 with a short justification.\n"
        << "End your answer with a line of the exact form 'Similarity: <score>'.\n\n"
        << "--- Problem A ---\n"
        << item.problem_a << "\n\n"
        << "--- Solution A ---\n"
        << item.solution_a << "\n\n"
        << "--- Problem B ---\n"
        << item.problem_b << "\n\n"
        << "--- Solution B ---\n"
        << item.solution_b << "\n";
    return out.str();
}

int ReviewClient::parse_similarity(const std::string& content) {
    static constexpr std::string_view kMarker = "Similarity:";
    const std::size_t pos = content.find(kMarker);
    if (pos == std::string::npos) throw ReviewParseError(content);

    std::size_t i = pos + kMarker.size();
    while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
    std::size_t j = i;
    while (j < content.size() && std::isdigit(static_cast<unsigned char>(content[j]))) ++j;
    if (j == i) throw ReviewParseError(content);

    const int score = std::stoi(content.substr(i, j - i));
    if (score < 0 || score > 5) throw ReviewParseError(content);
    return score;
}

std::string ReviewClient::request_body(const ReviewItem& item) const {
    json body;
    body["model"] = options_.model;
    body["temperature"] = 0;
    body["messages"] = json::array({json{{"role", "user"}, {"content", build_prompt(item)}}});
    return body.dump();
}

namespace {

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

/// Splits "scheme://host[:port]/path" into client base and request path.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ReviewUnavailable("review URL must include a scheme: " + url);
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/v1/chat/completions"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string ReviewClient::fetch(const std::string& body) {
    std::filesystem::path cache_file;
    if (!options_.cache_dir.empty()) {
        cache_file = options_.cache_dir / (hex64(fnv1a64(body)) + ".json");
        std::ifstream cached(cache_file);
        if (cached) {
            json record = json::parse(cached, nullptr, false);
            if (!record.is_discarded() && record.contains("content"))
                return record["content"].get<std::string>();
        }
    }

    if (options_.url.empty())
        throw ReviewUnavailable(
            "no review endpoint configured; set --review-url (and SUBLIME_REVIEW_TOKEN) or "
            "provide a prefilled response cache");

    const auto [base, path] = split_url(options_.url);
    std::string content;
    std::string last_error;
    bool got_content = false;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(options_.backoff_ms * (1 << (attempt - 1))));

        httplib::Client client(base);
        client.set_connection_timeout(options_.timeout_s);
        client.set_read_timeout(options_.timeout_s);
        httplib::Headers headers;
        if (!options_.token.empty())
            headers.emplace("Authorization", "Bearer " + options_.token);

        network_calls_.fetch_add(1);
        httplib::Result res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw ReviewUnavailable("review endpoint returned HTTP " +
                                    std::to_string(res->status));

        json parsed = json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
            throw ReviewParseError(res->body);
        const json& message = parsed["choices"][0]["message"];
        if (!message.contains("content") || !message["content"].is_string())
            throw ReviewParseError(res->body);
        content = message["content"].get<std::string>();
        got_content = true;
        break;
    }
    if (!got_content)
        throw ReviewUnavailable("review endpoint unreachable after " +
                                std::to_string(options_.max_retries + 1) + " attempts: " +
                                last_error);

    if (!cache_file.empty()) {
        json record;
        record["request"] = body;
        record["content"] = content;
        std::ofstream out(cache_file);
        out << record.dump() << '\n';
    }
    return content;
}

int ReviewClient::review(const ReviewItem& item) {
    return parse_similarity(fetch(request_body(item)));
}

std::vector<int> ReviewClient::review_all(const std::vector<ReviewItem>& items) {
    std::vector<int> out(items.size(), -1);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const std::size_t workers =
        std::min<std::size_t>(std::max(1, options_.max_in_flight), std::max<std::size_t>(items.size(), 1));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= items.size()) return;
                try {
                    out[i] = review(items[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace sublime
