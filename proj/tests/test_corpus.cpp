#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sublime/corpus.hpp"
#include "sublime/errors.hpp"

using namespace sublime;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_benchmark preserves line order") {
    const auto path = write_temp("bench_order.jsonl",
                                 R"({"id":"a","text":"first"})"
                                 "\n"
                                 R"({"id":"b","text":"second"})"
                                 "\n"
                                 R"({"id":"c","text":"third"})"
                                 "\n");
    const Benchmark b = load_benchmark(path, "text");
    REQUIRE(b.size() == 3);
    CHECK(b.at(0).id == "a");
    CHECK(b.at(1).id == "b");
    CHECK(b.at(2).id == "c");
}

TEST_CASE("load_benchmark rejects duplicate ids with the offending line") {
    const auto path = write_temp("bench_dup.jsonl",
                                 R"({"id":"a","text":"x"})"
                                 "\n"
                                 R"({"id":"a","text":"y"})"
                                 "\n");
    try {
        load_benchmark(path, "text");
        FAIL("expected DuplicateId");
    } catch (const DuplicateId& e) {
        CHECK(e.id == "a");
        CHECK(e.line == 2);
    }
}

TEST_CASE("load_benchmark maps the configured text field and keeps extras in aux") {
    const auto path =
        write_temp("bench_field.jsonl", R"({"id":"q1","question":"Can pigs fly?","split":"dev"})"
                                        "\n");
    const Benchmark b = load_benchmark(path, "question");
    REQUIRE(b.size() == 1);
    CHECK(b.at(0).id == "q1");
    CHECK(b.at(0).text == "Can pigs fly?");
    CHECK(b.at(0).aux.at("split") == "dev");

    const auto missing = write_temp("bench_missing.jsonl", R"({"id":"q1","text":"hi"})"
                                                           "\n");
    CHECK_THROWS_AS(load_benchmark(missing, "question"), SchemaError);
}

TEST_CASE("benchmark round-trips through its canonical serialization") {
    const auto path = write_temp("bench_rt.jsonl",
                                 R"({"id":"a","text":"one","extra":"1"})"
                                 "\n"
                                 R"({"id":"b","text":"two"})"
                                 "\n");
    const Benchmark b = load_benchmark(path, "text", "rt");
    const std::string canonical = serialize_benchmark(b, "text");
    const auto path2 = write_temp("bench_rt2.jsonl", canonical);
    const Benchmark b2 = load_benchmark(path2, "text", "rt");
    CHECK(b == b2);
    CHECK(serialize_benchmark(b2, "text") == canonical);
}

TEST_CASE("load_results builds a dense model-by-sample matrix") {
    const auto bench = write_temp("res_bench.jsonl",
                                  R"({"id":"s1","text":"x"})"
                                  "\n"
                                  R"({"id":"s2","text":"y"})"
                                  "\n");
    const Benchmark b = load_benchmark(bench, "text");

    const auto csv = write_temp("res_ok.csv",
                                "model,sample_id,score\n"
                                "mB,s1,1\n"
                                "mB,s2,1\n"
                                "mA,s1,1\n"
                                "mA,s2,0\n");
    const ResultMatrix m = load_results(csv, b);
    REQUIRE(m.models == std::vector<std::string>{"mA", "mB"});
    REQUIRE(m.sample_ids == std::vector<std::string>{"s1", "s2"});
    // row means: mA = 0.5, mB = 1.0
    const auto full = m.full_scores();
    CHECK(full[0] == doctest::Approx(0.5));
    CHECK(full[1] == doctest::Approx(1.0));
}

TEST_CASE("load_results flags missing cells and bad scores") {
    const auto bench = write_temp("res_bench2.jsonl",
                                  R"({"id":"s1","text":"x"})"
                                  "\n"
                                  R"({"id":"s2","text":"y"})"
                                  "\n");
    const Benchmark b = load_benchmark(bench, "text");

    const auto incomplete = write_temp("res_incomplete.csv",
                                       "model,sample_id,score\n"
                                       "mA,s1,1\n"
                                       "mA,s2,0\n"
                                       "mB,s1,1\n");
    CHECK_THROWS_AS(load_results(incomplete, b), IncompleteMatrix);

    const auto bad = write_temp("res_bad.csv",
                                "model,sample_id,score\n"
                                "mA,s1,nan\n"
                                "mA,s2,0\n");
    CHECK_THROWS_AS(load_results(bad, b), BadScore);
}

TEST_CASE("load_embeddings enforces a uniform dimension") {
    const auto ok = write_temp("emb_ok.jsonl",
                               R"({"id":"a","vector":[1,0,0,0]})"
                               "\n"
                               R"({"id":"b","vector":[0,1,0,0]})"
                               "\n");
    const EmbeddingSet set = load_embeddings(ok);
    CHECK(set.dim == 4);
    CHECK(set.valid());
    CHECK(set.at("a")[0] == 1.0);
    CHECK_THROWS_AS(set.at("zz"), MissingEmbedding);

    const auto ragged = write_temp("emb_ragged.jsonl",
                                   R"({"id":"a","vector":[1,0,0,0]})"
                                   "\n"
                                   R"({"id":"b","vector":[0,1,0,0,0]})"
                                   "\n");
    CHECK_THROWS_AS(load_embeddings(ragged), DimMismatch);

    const auto empty = write_temp("emb_empty.jsonl", "");
    const EmbeddingSet none = load_embeddings(empty);
    CHECK_FALSE(none.valid());
}

TEST_CASE("loading is pure: same bytes give the same value") {
    const std::string content = R"({"id":"a","text":"hello world","k":"v"})"
                                "\n"
                                R"({"id":"b","text":"bye"})"
                                "\n";
    const auto p1 = write_temp("pure1.jsonl", content);
    const auto p2 = write_temp("pure2.jsonl", content);
    CHECK(load_benchmark(p1, "text", "same") == load_benchmark(p2, "text", "same"));
}
