#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"
#include "sublime/redundancy.hpp"
#include "sublime/review_client.hpp"
#include "sublime/rng.hpp"

using namespace sublime;

namespace {

EmbeddingSet set_of(const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
    EmbeddingSet set;
    set.dim = entries.front().second.size();
    for (const auto& [id, vec] : entries) set.vectors[id] = vec;
    return set;
}

struct StubRunner : ExecRunner {
    std::vector<Outcome> outcomes;
    std::size_t next = 0;
    Outcome run(const std::string&, const std::string&, double) override {
        return outcomes[next++ % outcomes.size()];
    }
};

ExecRunner::Outcome ok_run(double wall_s, double bytes) {
    ExecRunner::Outcome o;
    o.status = ExecRunner::Outcome::Status::Ok;
    o.wall_s = wall_s;
    o.peak_bytes = bytes;
    return o;
}

}  // namespace

TEST_CASE("candidate_pairs: threshold, ordering, dim checks") {
    const EmbeddingSet a = set_of({{"a1", {1, 0, 0}}, {"a2", {0, 1, 0}}});
    const EmbeddingSet b = set_of({{"b1", {1, 0, 0}}, {"b2", {0, 0, 1}}});

    const auto pairs = candidate_pairs("A", a, "B", b, 0.8);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].a == PairKey{"A", "a1"});
    CHECK(pairs[0].b == PairKey{"B", "b1"});
    CHECK(pairs[0].cosine == doctest::Approx(1.0));
    CHECK(pairs[0].verdict == Verdict::Candidate);

    // orthogonal-only sets produce nothing above a high threshold
    const EmbeddingSet c = set_of({{"c1", {0, 1, 0}}});
    CHECK(candidate_pairs("A", set_of({{"a", {1, 0, 0}}}), "C", c, 0.8).empty());

    const EmbeddingSet wrong = set_of({{"w", {1, 0}}});
    CHECK_THROWS_AS(candidate_pairs("A", a, "W", wrong, 0.8), DimMismatch);
}

TEST_CASE("candidate_pairs: hand-set cosines select exactly the close pair") {
    // cosines against (1,0): 0.95-ish, 0.5, ~0.1
    const double s = std::sqrt(1 - 0.95 * 0.95);
    const EmbeddingSet a = set_of({{"a", {1, 0}}});
    const EmbeddingSet b = set_of({{"close", {0.95, s}},
                                   {"mid", {0.5, std::sqrt(0.75)}},
                                   {"far", {0.1, std::sqrt(0.99)}}});
    const auto pairs = candidate_pairs("A", a, "B", b, 0.8);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].b.second == "close");
}

TEST_CASE("complexity_match: factor rule and unknowns") {
    const ComplexityFingerprint fast{0.001, 10.0 * 1024 * 1024};
    const ComplexityFingerprint similar{0.0015, 12.0 * 1024 * 1024};
    const ComplexityFingerprint slow{0.1, 10.0 * 1024 * 1024};

    CHECK(complexity_match(fast, similar, 4.0) == true);
    CHECK(complexity_match(fast, slow, 4.0) == false);
    CHECK(complexity_match(fast, fast, 1.0001) == true);
    CHECK_FALSE(complexity_match(std::nullopt, fast, 4.0).has_value());
    CHECK_THROWS_AS(complexity_match(fast, fast, 1.0), Error);
}

TEST_CASE("measure_fingerprint: median time, max memory, error paths") {
    StubRunner stub;
    stub.outcomes = {ok_run(0.002, 1048576)};
    const ComplexityFingerprint fp = measure_fingerprint(stub, "print(1)", "tests/");
    CHECK(fp.time_s == doctest::Approx(0.002));
    CHECK(fp.mem_bytes == doctest::Approx(1048576));

    StubRunner jitter;
    jitter.outcomes = {ok_run(0.001, 10), ok_run(0.002, 30), ok_run(0.009, 20)};
    const ComplexityFingerprint med = measure_fingerprint(jitter, "x", "t");
    CHECK(med.time_s == doctest::Approx(0.002));
    CHECK(med.mem_bytes == doctest::Approx(30));

    StubRunner failing;
    ExecRunner::Outcome bad;
    bad.status = ExecRunner::Outcome::Status::Failed;
    bad.detail = "boom";
    failing.outcomes = {bad};
    CHECK_THROWS_AS(measure_fingerprint(failing, "x", "t"), ExecutionFailed);

    StubRunner timing_out;
    ExecRunner::Outcome t;
    t.status = ExecRunner::Outcome::Status::TimedOut;
    timing_out.outcomes = {t};
    CHECK_THROWS_AS(measure_fingerprint(timing_out, "x", "t"), Timeout);
}

TEST_CASE("parse_similarity: marker rule") {
    CHECK(ReviewClient::parse_similarity("The pairs match closely. Similarity: 4") == 4);
    CHECK(ReviewClient::parse_similarity("Similarity:5") == 5);
    CHECK(ReviewClient::parse_similarity("Similarity:\n  3 of 5") == 3);
    CHECK_THROWS_AS(ReviewClient::parse_similarity("no marker here"), ReviewParseError);
    CHECK_THROWS_AS(ReviewClient::parse_similarity("Similarity: 7"), ReviewParseError);
    CHECK_THROWS_AS(ReviewClient::parse_similarity("Similarity: none"), ReviewParseError);
}

TEST_CASE("classify_pairs: funnel stages and verdicts") {
    std::vector<RedundantPair> candidates(3);
    candidates[0].a = {"A", "a1"};
    candidates[0].b = {"B", "b1"};
    candidates[0].cosine = 0.99;
    candidates[1].a = {"A", "a2"};
    candidates[1].b = {"B", "b2"};
    candidates[1].cosine = 0.95;
    candidates[2].a = {"A", "a3"};
    candidates[2].b = {"B", "b3"};
    candidates[2].cosine = 0.9;

    FingerprintMap fps;
    fps[{"A", "a1"}] = {0.001, 100};
    fps[{"B", "b1"}] = {0.0012, 110};
    fps[{"A", "a2"}] = {0.001, 100};
    fps[{"B", "b2"}] = {0.9, 100};  // complexity mismatch
    // a3/b3 unmeasured -> unknown

    ReviewMap reviews;
    reviews[{{"A", "a1"}, {"B", "b1"}}] = 5;

    StageConfig config;
    FunnelCounts counts;
    const auto pairs = classify_pairs(candidates, fps, reviews, config, &counts);

    CHECK(counts.candidates == 3);
    CHECK(counts.after_complexity == 1);  // unknown drops by default
    CHECK(counts.after_review == 1);
    CHECK(pairs[0].verdict == Verdict::Redundant);
    CHECK(pairs[1].verdict == Verdict::FilteredComplexity);
    CHECK(pairs[2].verdict == Verdict::Candidate);
    CHECK(pairs[2].complexity_match == Tri::Unknown);

    // semantic-only funnel: every candidate is redundant
    StageConfig semantic_only;
    semantic_only.complexity_enabled = false;
    semantic_only.review_enabled = false;
    const auto all = classify_pairs(candidates, {}, {}, semantic_only, &counts);
    for (const auto& pair : all) CHECK(pair.verdict == Verdict::Redundant);
    CHECK(counts.after_complexity == 3);
    CHECK(counts.after_review == 3);

    // funnel monotonicity holds on any config
    CHECK(counts.candidates >= counts.after_complexity);
    CHECK(counts.after_complexity >= counts.after_review);
}

TEST_CASE("classify_pairs: review threshold gates redundancy") {
    std::vector<RedundantPair> candidates(1);
    candidates[0].a = {"A", "x"};
    candidates[0].b = {"B", "y"};
    candidates[0].cosine = 0.95;

    StageConfig config;
    config.complexity_enabled = false;
    ReviewMap low;
    low[{{"A", "x"}, {"B", "y"}}] = 3;
    auto pairs = classify_pairs(candidates, {}, low, config, nullptr);
    CHECK(pairs[0].verdict == Verdict::Candidate);
    CHECK(pairs[0].llm_score == 3);

    ReviewMap high;
    high[{{"A", "x"}, {"B", "y"}}] = 4;
    pairs = classify_pairs(candidates, {}, high, config, nullptr);
    CHECK(pairs[0].verdict == Verdict::Redundant);
}

namespace {

ResultMatrix binary_matrix(const std::string& name, std::size_t models, std::size_t samples,
                           std::uint64_t seed) {
    ResultMatrix m;
    m.benchmark_name = name;
    Rng rng(seed);
    for (std::size_t i = 0; i < models; ++i) m.models.push_back("m" + std::to_string(i));
    for (std::size_t j = 0; j < samples; ++j) m.sample_ids.push_back("s" + std::to_string(j));
    m.scores.assign(models, std::vector<double>(samples, 0.0));
    for (auto& row : m.scores)
        for (double& v : row) v = rng.bounded(2) ? 1.0 : 0.0;
    return m;
}

}  // namespace

TEST_CASE("match_rate: planted identical columns agree perfectly") {
    ResultMatrix a = binary_matrix("A", 19, 5, 31);
    ResultMatrix b = binary_matrix("B", 19, 5, 77);
    // plant: column of b sample s0 copies a sample s0
    for (std::size_t i = 0; i < 19; ++i) b.scores[i][0] = a.scores[i][0];

    RedundantPair planted;
    planted.a = {"A", "s0"};
    planted.b = {"B", "s0"};
    planted.verdict = Verdict::Redundant;
    CHECK(match_rate({planted}, a, b) == doctest::Approx(1.0));
}

TEST_CASE("match_rate: hand count and error paths") {
    ResultMatrix a = binary_matrix("A", 3, 1, 1);
    ResultMatrix b = binary_matrix("B", 3, 1, 2);
    a.scores = {{1}, {0}, {1}};
    b.scores = {{1}, {0}, {0}};  // 2 of 3 agree
    RedundantPair pair;
    pair.a = {"A", "s0"};
    pair.b = {"B", "s0"};
    CHECK(match_rate({pair}, a, b) == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(match_rate({}, a, b), EmptySet);

    ResultMatrix continuous = a;
    continuous.scores[0][0] = 0.5;
    CHECK_THROWS_AS(match_rate({pair}, continuous, b), NonBinaryScores);
}

TEST_CASE("match_rate: independent random binary columns sit near 0.5") {
    const std::size_t models = 19, samples = 200;
    ResultMatrix a = binary_matrix("A", models, samples, 101);
    ResultMatrix b = binary_matrix("B", models, samples, 202);
    std::vector<RedundantPair> pairs(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        pairs[j].a = {"A", "s" + std::to_string(j)};
        pairs[j].b = {"B", "s" + std::to_string(j)};
    }
    const double rate = match_rate(pairs, a, b);
    // 3 sigma with sigma = sqrt(0.25/19)/sqrt(200) ~ 0.0081
    CHECK(rate > 0.5 - 0.025);
    CHECK(rate < 0.5 + 0.025);
}

TEST_CASE("supersubset_update: union, idempotence, key checks") {
    SuperSubset sup{"random", 10, {}};
    SubsetPlan plan{"b1", "random", 10, 1, {"a", "b", "c"}};
    supersubset_update(sup, plan);
    CHECK(sup.ids.size() == 3);
    supersubset_update(sup, plan);
    CHECK(sup.ids.size() == 3);  // idempotent

    SubsetPlan other{"b2", "random", 10, 1, {"x", "y", "z", "w"}};
    supersubset_update(sup, other);
    CHECK(sup.ids.size() == 7);

    SubsetPlan mismatch{"b3", "random", 20, 1, {"q"}};
    CHECK_THROWS_AS(supersubset_update(sup, mismatch), KeyMismatch);
}

TEST_CASE("pair records round-trip through jsonl") {
    std::vector<RedundantPair> pairs(2);
    pairs[0].a = {"A", "a1"};
    pairs[0].b = {"B", "b1"};
    pairs[0].cosine = 0.987;
    pairs[0].complexity_match = Tri::True;
    pairs[0].llm_score = 5;
    pairs[0].verdict = Verdict::Redundant;
    pairs[1].a = {"A", "a2"};
    pairs[1].b = {"B", "b2"};
    pairs[1].cosine = 0.91;
    pairs[1].verdict = Verdict::Candidate;

    const auto parsed = parse_pairs(serialize_pairs(pairs));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].verdict == Verdict::Redundant);
    CHECK(parsed[0].llm_score == 5);
    CHECK(parsed[0].cosine == doctest::Approx(0.987));
    CHECK(parsed[1].llm_score == -1);
    CHECK(parsed[1].verdict == Verdict::Candidate);
}

TEST_CASE("review client: mock endpoint, retry, cache") {
    std::atomic<int> calls{0};
    httplib::Server server;
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        nlohmann::json message;
        message["role"] = "assistant";
        message["content"] = "Close match overall. Similarity: 4";
        nlohmann::json choice;
        choice["message"] = message;
        nlohmann::json reply;
        reply["choices"] = nlohmann::json::array({choice});
        res.set_content(reply.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const auto cache_dir =
        std::filesystem::temp_directory_path() / "sublime_review_cache_test";
    std::filesystem::remove_all(cache_dir);

    ReviewClient::Options options;
    options.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    options.cache_dir = cache_dir;
    options.backoff_ms = 1;
    ReviewClient client(options);

    ReviewItem item{"problem a", "solution a", "problem b", "solution b"};
    CHECK(client.review(item) == 4);
    CHECK(calls == 1);

    // same item again: served from cache, no new network call
    CHECK(client.review(item) == 4);
    CHECK(calls == 1);

    // a fresh client hits the disk cache too
    ReviewClient offline_client(options);
    CHECK(offline_client.review(item) == 4);
    CHECK(calls == 1);
    CHECK(offline_client.network_calls() == 0);

    server.stop();
    server_thread.join();

    // endpoint gone and item uncached -> ReviewUnavailable after retries
    ReviewClient::Options dead = options;
    dead.max_retries = 1;
    ReviewClient dead_client(dead);
    ReviewItem other{"different", "items", "entirely", "here"};
    CHECK_THROWS_AS(dead_client.review(other), ReviewUnavailable);
}
