#include "sublime/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"
#include "sublime/version.hpp"

#ifndef SUBLIME_DEFAULT_DATA_DIR
#define SUBLIME_DEFAULT_DATA_DIR "data"
#endif

namespace sublime {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return {};
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<int> parse_rates(const json& j) {
    std::vector<int> rates;
    if (j.is_array()) {
        for (const auto& r : j) rates.push_back(r.get<int>());
    } else if (j.is_object()) {
        const int from = j.value("from", 1);
        const int to = j.value("to", 100);
        const int step = j.value("step", 1);
        if (step <= 0) throw SchemaError("rates.step must be positive", 0);
        for (int r = from; r <= to; r += step) rates.push_back(r);
    } else {
        throw SchemaError("rates must be an array or {from,to,step}", 0);
    }
    for (int r : rates)
        if (r < 1 || r > 100) throw BadRate(r);
    return rates;
}

MethodSpec parse_method(const json& j) {
    if (j.is_string()) return MethodSpec::make(j.get<std::string>());
    if (!j.is_object() || !j.contains("id"))
        throw SchemaError("method entries need an 'id'", 0);
    MethodSpec spec = MethodSpec::make(j["id"].get<std::string>());
    if (j.contains("direction")) {
        const std::string d = j["direction"].get<std::string>();
        if (d == "ascending")
            spec.direction = Direction::Ascending;
        else if (d == "descending")
            spec.direction = Direction::Descending;
        else
            throw SchemaError("direction must be ascending|descending", 0);
    }
    if (j.contains("params"))
        for (const auto& [key, value] : j["params"].items())
            spec.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
    return spec;
}

}  // namespace

RunConfig RunConfig::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw SchemaError("config is not a JSON object", 0);

    const fs::path base = path.parent_path();
    RunConfig cfg;
    cfg.text_field = j.value("text_field", std::string("text"));

    if (!j.contains("benchmarks") || !j["benchmarks"].is_array() || j["benchmarks"].empty())
        throw SchemaError("config needs a nonempty 'benchmarks' array", 0);
    for (const auto& b : j["benchmarks"]) {
        BenchmarkConfig bc;
        if (!b.contains("path")) throw SchemaError("benchmark entry needs 'path'", 0);
        bc.path = resolve(base, b["path"].get<std::string>());
        bc.name = b.value("name", bc.path.stem().string());
        bc.results = resolve(base, b.value("results", std::string()));
        if (b.contains("embeddings"))
            for (const auto& [tag, p] : b["embeddings"].items())
                bc.embeddings[tag] = resolve(base, p.get<std::string>());
        cfg.benchmarks.push_back(std::move(bc));
    }

    if (j.contains("methods"))
        for (const auto& m : j["methods"]) cfg.methods.push_back(parse_method(m));
    if (cfg.methods.empty()) cfg.methods.push_back(MethodSpec::make("random"));

    cfg.rates = j.contains("rates") ? parse_rates(j["rates"]) : [] {
        std::vector<int> all(100);
        for (int r = 1; r <= 100; ++r) all[r - 1] = r;
        return all;
    }();

    if (j.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : j["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
        if (cfg.seeds.empty()) throw SchemaError("seeds must not be empty", 0);
    }

    if (j.contains("adaptive")) {
        const json& a = j["adaptive"];
        if (a.contains("window")) {
            cfg.window_lo = a["window"].at(0).get<int>();
            cfg.window_hi = a["window"].at(1).get<int>();
        }
        cfg.adaptive_threshold = a.value("threshold", 0.9);
    }

    if (j.contains("difficulty_weights")) {
        const json& w = j["difficulty_weights"];
        if (!w.is_array() || w.size() != 4)
            throw SchemaError("difficulty_weights must have 4 entries", 0);
        for (std::size_t i = 0; i < 4; ++i) cfg.difficulty_weights[i] = w[i].get<double>();
    }
    if (j.contains("cpd_weights")) {
        const json& w = j["cpd_weights"];
        if (!w.is_array() || w.size() != 3)
            throw SchemaError("cpd_weights must have 3 entries", 0);
        cfg.cpd_weights.wordform = w[0].get<double>();
        cfg.cpd_weights.vcr = w[1].get<double>();
        cfg.cpd_weights.nop = w[2].get<double>();
    }

    const fs::path data_dir(SUBLIME_DEFAULT_DATA_DIR);
    cfg.easy_words = data_dir / "dale_easy_words.txt";
    cfg.english_words = data_dir / "english_words.txt";
    if (j.contains("dictionaries")) {
        const json& d = j["dictionaries"];
        if (d.contains("easy_words"))
            cfg.easy_words = resolve(base, d["easy_words"].get<std::string>());
        if (d.contains("english_words"))
            cfg.english_words = resolve(base, d["english_words"].get<std::string>());
    }

    if (j.contains("cluster")) {
        const json& c = j["cluster"];
        cfg.cluster.k = c.value("k", 0);
        cfg.cluster.n_neighbors = c.value("n_neighbors", 10);
        cfg.cluster.kmeans_iters = c.value("kmeans_iters", 100);
        cfg.cluster.nmf_iters = c.value("nmf_iters", 200);
        cfg.cluster.lda_iters = c.value("lda_iters", 200);
        cfg.cluster.alpha = c.value("alpha", -1.0);
        cfg.cluster.beta = c.value("beta", 0.01);
    }
    if (j.contains("tfidf")) {
        cfg.tfidf.min_df = j["tfidf"].value("min_df", 2);
        cfg.tfidf.max_df_frac = j["tfidf"].value("max_df_frac", 0.95);
    }

    if (j.contains("redundancy")) {
        const json& r = j["redundancy"];
        cfg.redundancy.tau = r.value("tau", 0.8);
        cfg.redundancy.factor = r.value("factor", 4.0);
        cfg.redundancy.review_threshold = r.value("review_threshold", 4);
        if (r.contains("stages")) {
            cfg.redundancy.complexity_enabled = r["stages"].value("complexity", true);
            cfg.redundancy.review_enabled = r["stages"].value("review", true);
        }
        cfg.redundancy.unknown_passes = r.value("unknown_passes", false);
        cfg.redundancy.embedding_tag = r.value("embedding_tag", std::string());
        cfg.redundancy.review_url = r.value("review_url", std::string());
        cfg.redundancy.review_model = r.value("review_model", std::string("gpt-4"));
        cfg.redundancy.cache_dir = resolve(base, r.value("cache_dir", std::string()));
        cfg.redundancy.fingerprints = resolve(base, r.value("fingerprints", std::string()));
        cfg.redundancy.pairs = resolve(base, r.value("pairs", std::string()));
        cfg.redundancy.runner_cmd = r.value("runner_cmd", std::string());
        cfg.redundancy.solution_field = r.value("solution_field", std::string("solution"));
        cfg.redundancy.tests_field = r.value("tests_field", std::string("tests"));
        cfg.redundancy.max_in_flight = r.value("max_in_flight", 4);
        cfg.redundancy.pearson_threshold = r.value("pearson_threshold", 0.9);
    }

    cfg.out_dir = resolve(base, j.value("out_dir", std::string("out")));
    cfg.jobs = j.value("jobs", 1u);
    if (cfg.jobs == 0) cfg.jobs = 1;

    if (cfg.window_lo < 1 || cfg.window_hi > 100 || cfg.window_lo > cfg.window_hi)
        throw SchemaError("adaptive window must satisfy 1 <= lo <= hi <= 100", 0);

    return cfg;
}

std::string RunConfig::resolved_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "sublime";
    j["tool_version"] = std::string(kToolVersion);
    j["text_field"] = text_field;

    j["benchmarks"] = nlohmann::ordered_json::array();
    for (const auto& b : benchmarks) {
        nlohmann::ordered_json e;
        e["name"] = b.name;
        e["path"] = b.path.string();
        e["results"] = b.results.string();
        nlohmann::ordered_json tags;
        for (const auto& [tag, p] : b.embeddings) tags[tag] = p.string();
        e["embeddings"] = tags;
        j["benchmarks"].push_back(e);
    }

    j["methods"] = nlohmann::ordered_json::array();
    for (const auto& m : methods) {
        nlohmann::ordered_json e;
        e["id"] = m.id;
        e["direction"] = m.direction == Direction::Ascending ? "ascending" : "descending";
        nlohmann::ordered_json params;
        for (const auto& [key, value] : m.params) params[key] = value;
        e["params"] = params;
        j["methods"].push_back(e);
    }

    j["rates"] = rates;
    j["seeds"] = seeds;
    j["adaptive"] = {{"window", {window_lo, window_hi}}, {"threshold", adaptive_threshold}};
    j["difficulty_weights"] = difficulty_weights;
    j["cpd_weights"] = {cpd_weights.wordform, cpd_weights.vcr, cpd_weights.nop};
    j["dictionaries"] = {{"easy_words", easy_words.string()},
                         {"english_words", english_words.string()}};
    j["cluster"] = {{"k", cluster.k},
                    {"n_neighbors", cluster.n_neighbors},
                    {"kmeans_iters", cluster.kmeans_iters},
                    {"nmf_iters", cluster.nmf_iters},
                    {"lda_iters", cluster.lda_iters},
                    {"alpha", cluster.alpha},
                    {"beta", cluster.beta}};
    j["tfidf"] = {{"min_df", tfidf.min_df}, {"max_df_frac", tfidf.max_df_frac}};
    j["redundancy"] = {{"tau", redundancy.tau},
                       {"factor", redundancy.factor},
                       {"review_threshold", redundancy.review_threshold},
                       {"stages",
                        {{"complexity", redundancy.complexity_enabled},
                         {"review", redundancy.review_enabled}}},
                       {"unknown_passes", redundancy.unknown_passes},
                       {"embedding_tag", redundancy.embedding_tag},
                       {"review_url", redundancy.review_url},
                       {"review_model", redundancy.review_model},
                       {"cache_dir", redundancy.cache_dir.string()},
                       {"fingerprints", redundancy.fingerprints.string()},
                       {"pairs", redundancy.pairs.string()},
                       {"runner_cmd", redundancy.runner_cmd},
                       {"solution_field", redundancy.solution_field},
                       {"tests_field", redundancy.tests_field},
                       {"max_in_flight", redundancy.max_in_flight},
                       {"pearson_threshold", redundancy.pearson_threshold}};
    j["out_dir"] = out_dir.string();
    // jobs is omitted: worker count never changes results, and the resolved
    // config must be byte-identical across --jobs settings.
    return j.dump(2) + "\n";
}

}  // namespace sublime
