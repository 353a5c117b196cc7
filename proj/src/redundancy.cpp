#include "sublime/redundancy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"

namespace sublime {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Candidate: return "candidate";
        case Verdict::FilteredComplexity: return "filtered_complexity";
        case Verdict::Redundant: return "redundant";
    }
    return "candidate";
}

std::string to_string(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    return dot / std::sqrt(na * nb);
}

std::vector<std::string> sorted_ids(const EmbeddingSet& set) {
    std::vector<std::string> ids;
    ids.reserve(set.vectors.size());
    for (const auto& [id, vec] : set.vectors) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

std::vector<RedundantPair> candidate_pairs(const std::string& name_a, const EmbeddingSet& emb_a,
                                           const std::string& name_b, const EmbeddingSet& emb_b,
                                           double tau) {
    if (!emb_a.valid() || !emb_b.valid())
        throw EmptySet("candidate_pairs: empty embedding set");
    if (emb_a.dim != emb_b.dim)
        throw DimMismatch("candidate_pairs: dims " + std::to_string(emb_a.dim) + " vs " +
                          std::to_string(emb_b.dim));
    if (!(tau > -1.0 && tau <= 1.0)) throw Error("candidate_pairs: tau must be in (-1, 1]");

    std::vector<RedundantPair> out;
    for (const auto& ida : sorted_ids(emb_a)) {
        const auto& va = emb_a.vectors.at(ida);
        for (const auto& idb : sorted_ids(emb_b)) {
            const double cos = cosine(va, emb_b.vectors.at(idb));
            if (cos >= tau) {
                RedundantPair pair;
                pair.a = {name_a, ida};
                pair.b = {name_b, idb};
                pair.cosine = cos;
                out.push_back(std::move(pair));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RedundantPair& x, const RedundantPair& y) {
        if (x.cosine != y.cosine) return x.cosine > y.cosine;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

std::optional<bool> complexity_match(const std::optional<ComplexityFingerprint>& fp_a,
                                     const std::optional<ComplexityFingerprint>& fp_b,
                                     double factor) {
    if (!(factor > 1.0)) throw Error("complexity_match: factor must be > 1");
    if (!fp_a || !fp_b) return std::nullopt;

    const auto within = [factor](double x, double y) {
        if (x == y) return true;
        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        if (lo <= 0.0) return false;
        return hi / lo <= factor;
    };
    return within(fp_a->time_s, fp_b->time_s) && within(fp_a->mem_bytes, fp_b->mem_bytes);
}

ComplexityFingerprint measure_fingerprint(ExecRunner& runner, const std::string& solution,
                                          const std::string& tests, double timeout_s) {
    if (solution.empty() || tests.empty())
        throw Error("measure_fingerprint: solution and tests must be nonempty");

    std::array<double, 3> times{};
    double peak = 0.0;
    for (int i = 0; i < 3; ++i) {
        const ExecRunner::Outcome outcome = runner.run(solution, tests, timeout_s);
        if (outcome.status == ExecRunner::Outcome::Status::TimedOut) throw Timeout();
        if (outcome.status != ExecRunner::Outcome::Status::Ok)
            throw ExecutionFailed(outcome.detail.empty() ? "runner reported failure"
                                                         : outcome.detail);
        times[i] = outcome.wall_s;
        peak = std::max(peak, outcome.peak_bytes);
    }
    std::sort(times.begin(), times.end());
    return ComplexityFingerprint{times[1], peak};
}

LocalProcessRunner::LocalProcessRunner(std::string command_template)
    : command_template_(std::move(command_template)) {}

ExecRunner::Outcome LocalProcessRunner::run(const std::string& solution,
                                            const std::string& tests, double timeout_s) {
    std::string cmd = command_template_;
    const auto replace_all = [&cmd](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = cmd.find(from, pos)) != std::string::npos) {
            cmd.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("{solution}", solution);
    replace_all("{tests}", tests);
    replace_all("{timeout}", std::to_string(timeout_s));

    Outcome out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        out.detail = "popen failed for: " + cmd;
        return out;
    }
    char buffer[512];
    std::string output;
    while (fgets(buffer, sizeof(buffer), pipe)) output += buffer;
    const int rc = pclose(pipe);

    std::string status;
    double wall = 0.0, bytes = 0.0;
    if (std::sscanf(output.c_str(), "%511s %lf %lf", buffer, &wall, &bytes) == 3)
        status = buffer;
    if (status == "ok" && rc == 0) {
        out.status = Outcome::Status::Ok;
        out.wall_s = wall;
        out.peak_bytes = bytes;
    } else if (status == "timeout") {
        out.status = Outcome::Status::TimedOut;
    } else {
        out.status = Outcome::Status::Failed;
        out.detail = output.empty() ? ("exit " + std::to_string(rc)) : output;
    }
    return out;
}

std::vector<RedundantPair> classify_pairs(std::vector<RedundantPair> candidates,
                                          const FingerprintMap& fingerprints,
                                          const ReviewMap& reviews, const StageConfig& config,
                                          FunnelCounts* counts) {
    FunnelCounts tally;
    tally.candidates = candidates.size();

    for (auto& pair : candidates) {
        pair.verdict = Verdict::Candidate;

        bool survives = true;
        if (config.complexity_enabled) {
            const auto find_fp = [&](const PairKey& key) -> std::optional<ComplexityFingerprint> {
                auto it = fingerprints.find(key);
                if (it == fingerprints.end()) return std::nullopt;
                return it->second;
            };
            const std::optional<bool> matched =
                complexity_match(find_fp(pair.a), find_fp(pair.b), config.factor);
            if (!matched.has_value()) {
                pair.complexity_match = Tri::Unknown;
                survives = config.unknown_passes;
            } else if (*matched) {
                pair.complexity_match = Tri::True;
            } else {
                pair.complexity_match = Tri::False;
                pair.verdict = Verdict::FilteredComplexity;
                survives = false;
            }
        }
        if (survives) ++tally.after_complexity;

        if (survives && config.review_enabled) {
            auto it = reviews.find({pair.a, pair.b});
            if (it == reviews.end()) {
                survives = false;  // not reviewed: cannot be ruled redundant
            } else {
                pair.llm_score = it->second;
                survives = it->second >= config.review_threshold;
            }
        }
        if (survives) {
            pair.verdict = Verdict::Redundant;
            ++tally.after_review;
        }
    }
    if (!config.complexity_enabled) tally.after_complexity = tally.candidates;
    if (counts) *counts = tally;
    return candidates;
}

double match_rate(const std::vector<RedundantPair>& pairs, const ResultMatrix& results_a,
                  const ResultMatrix& results_b) {
    if (pairs.empty()) throw EmptySet("match_rate: no pairs");
    if (results_a.models != results_b.models)
        throw ModelSetMismatch("match_rate: model sets differ");

    const auto check_binary = [](const ResultMatrix& m) {
        for (const auto& row : m.scores)
            for (double v : row)
                if (v != 0.0 && v != 1.0)
                    throw NonBinaryScores("match_rate requires 0/1 scores");
    };
    check_binary(results_a);
    check_binary(results_b);

    const std::size_t m = results_a.model_count();
    double total = 0.0;
    for (const auto& pair : pairs) {
        if (pair.a.first != results_a.benchmark_name || pair.b.first != results_b.benchmark_name)
            throw KeyMismatch("match_rate: pair references benchmark '" + pair.a.first + "'/'" +
                              pair.b.first + "'");
        const std::size_t col_a = [&] {
            auto it = std::find(results_a.sample_ids.begin(), results_a.sample_ids.end(),
                                pair.a.second);
            if (it == results_a.sample_ids.end()) throw UnknownSampleId(pair.a.second);
            return static_cast<std::size_t>(it - results_a.sample_ids.begin());
        }();
        const std::size_t col_b = [&] {
            auto it = std::find(results_b.sample_ids.begin(), results_b.sample_ids.end(),
                                pair.b.second);
            if (it == results_b.sample_ids.end()) throw UnknownSampleId(pair.b.second);
            return static_cast<std::size_t>(it - results_b.sample_ids.begin());
        }();
        std::size_t agree = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (results_a.scores[i][col_a] == results_b.scores[i][col_b]) ++agree;
        total += static_cast<double>(agree) / static_cast<double>(m);
    }
    return total / static_cast<double>(pairs.size());
}

void supersubset_update(SuperSubset& sup, const SubsetPlan& plan) {
    if (sup.method != plan.method || sup.rate_pct != plan.rate_pct)
        throw KeyMismatch("supersubset_update: (" + sup.method + "," +
                          std::to_string(sup.rate_pct) + ") vs (" + plan.method + "," +
                          std::to_string(plan.rate_pct) + ")");
    for (const auto& id : plan.ids) sup.ids.emplace(plan.benchmark, id);
}

std::string serialize_pairs(const std::vector<RedundantPair>& pairs) {
    std::string out;
    for (const auto& pair : pairs) {
        nlohmann::ordered_json record;
        record["benchmark_a"] = pair.a.first;
        record["id_a"] = pair.a.second;
        record["benchmark_b"] = pair.b.first;
        record["id_b"] = pair.b.second;
        record["cosine"] = pair.cosine;
        record["complexity_match"] = to_string(pair.complexity_match);
        if (pair.llm_score >= 0)
            record["llm_score"] = pair.llm_score;
        else
            record["llm_score"] = nullptr;
        record["verdict"] = to_string(pair.verdict);
        out += record.dump();
        out += '\n';
    }
    return out;
}

std::vector<RedundantPair> parse_pairs(const std::string& jsonl) {
    std::vector<RedundantPair> out;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < jsonl.size()) {
        std::size_t end = jsonl.find('\n', start);
        if (end == std::string::npos) end = jsonl.size();
        const std::string line = jsonl.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded()) throw SchemaError("invalid pair record", line_no);
        RedundantPair pair;
        pair.a = {record.at("benchmark_a").get<std::string>(),
                  record.at("id_a").get<std::string>()};
        pair.b = {record.at("benchmark_b").get<std::string>(),
                  record.at("id_b").get<std::string>()};
        pair.cosine = record.at("cosine").get<double>();
        const std::string tri = record.value("complexity_match", "unknown");
        pair.complexity_match = tri == "true" ? Tri::True
                                : tri == "false" ? Tri::False
                                                 : Tri::Unknown;
        if (record.contains("llm_score") && !record["llm_score"].is_null())
            pair.llm_score = record["llm_score"].get<int>();
        const std::string verdict = record.value("verdict", "candidate");
        pair.verdict = verdict == "redundant" ? Verdict::Redundant
                       : verdict == "filtered_complexity" ? Verdict::FilteredComplexity
                                                          : Verdict::Candidate;
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace sublime
