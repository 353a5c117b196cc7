#include "sublime/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sublime/cluster.hpp"
#include "sublime/errors.hpp"
#include "sublime/fidelity.hpp"
#include "sublime/io_util.hpp"
#include "sublime/parallel.hpp"
#include "sublime/redundancy.hpp"
#include "sublime/review_client.hpp"
#include "sublime/sampler.hpp"
#include "sublime/vectorize.hpp"

namespace sublime::pipeline {

namespace {

using nlohmann::ordered_json;

struct MetricsBundle {
    std::vector<QualityProfile> quality;
    std::vector<ReadabilityProfile> readability;
    std::vector<double> difficulty;
};

struct Dictionaries {
    WordSet english;
    WordSet easy;
};

Dictionaries load_dictionaries(const RunConfig& cfg) {
    return Dictionaries{load_word_set(cfg.english_words), load_word_set(cfg.easy_words)};
}

MetricsBundle compute_metrics(const Benchmark& benchmark, const Dictionaries& dicts,
                              const RunConfig& cfg) {
    const std::size_t n = benchmark.size();
    MetricsBundle out;
    out.quality.resize(n);
    out.readability.resize(n);
    parallel_for(n, cfg.jobs, [&](std::size_t i) {
        const TokenStats stats = tokenize(benchmark.at(i).text);
        out.quality[i] = quality_profile(stats, dicts.english, cfg.cpd_weights);
        out.readability[i] = readability_profile(stats, dicts.easy);
    });
    out.difficulty = difficulty_scores(out.readability, cfg.difficulty_weights);
    return out;
}

bool needs_metrics(const std::vector<MethodSpec>& methods) {
    return std::any_of(methods.begin(), methods.end(), [](const MethodSpec& m) {
        return m.kind() == MethodSpec::Kind::Ranked;
    });
}

bool needs_tfidf(const std::vector<MethodSpec>& methods) {
    return std::any_of(methods.begin(), methods.end(), [](const MethodSpec& m) {
        return m.id == "cluster_kmeans_tfidf" || m.id == "cluster_nmf_tfidf";
    });
}

std::vector<std::string> spectral_tags(const std::vector<MethodSpec>& methods) {
    static constexpr std::string_view kPrefix = "cluster_spectral_";
    std::vector<std::string> tags;
    for (const auto& m : methods)
        if (m.id.rfind(kPrefix, 0) == 0) tags.push_back(m.id.substr(kPrefix.size()));
    return tags;
}

/// Everything loaded or derived once per benchmark.
struct BenchmarkContext {
    const BenchmarkConfig* config = nullptr;
    Benchmark benchmark;
    std::optional<ResultMatrix> results;
    std::map<std::string, EmbeddingSet> embeddings;
    std::optional<TfidfMatrix> tfidf;
    std::optional<MetricsBundle> metrics;
};

struct Needs {
    bool results = false;
    bool metrics = false;
    std::vector<std::string> embedding_tags;
    bool tfidf = false;
};

BenchmarkContext load_context(const BenchmarkConfig& bc, const RunConfig& cfg,
                              const Dictionaries* dicts, const Needs& needs) {
    BenchmarkContext ctx;
    ctx.config = &bc;
    ctx.benchmark = load_benchmark(bc.path, cfg.text_field, bc.name);
    if (needs.results) {
        if (bc.results.empty())
            throw Error("benchmark '" + bc.name + "' has no results path configured");
        ctx.results = load_results(bc.results, ctx.benchmark);
    }
    for (const auto& tag : needs.embedding_tags) {
        auto it = bc.embeddings.find(tag);
        if (it == bc.embeddings.end())
            throw Error("benchmark '" + bc.name + "' has no embedding file for tag '" + tag +
                        "'");
        EmbeddingSet set = load_embeddings(it->second);
        if (!set.valid())
            throw Error("embedding set '" + tag + "' for benchmark '" + bc.name +
                        "' is empty");
        ctx.embeddings.emplace(tag, std::move(set));
    }
    if (needs.tfidf)
        ctx.tfidf = build_tfidf(ctx.benchmark, cfg.tfidf.min_df, cfg.tfidf.max_df_frac);
    if (needs.metrics) ctx.metrics = compute_metrics(ctx.benchmark, *dicts, cfg);
    return ctx;
}

std::map<std::string, double> metric_scores(const Benchmark& benchmark,
                                            const MetricsBundle& metrics,
                                            const std::string& method_id) {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < benchmark.size(); ++i) {
        const std::string& id = benchmark.at(i).id;
        if (method_id == "quality_spelling_error")
            out[id] = static_cast<double>(metrics.quality[i].spelling_errors);
        else if (method_id == "quality_repeating_words")
            out[id] = static_cast<double>(metrics.quality[i].repeating_words);
        else if (method_id == "quality_lexical_diversity")
            out[id] = metrics.quality[i].lexical_diversity;
        else if (method_id == "quality_avg_word_length")
            out[id] = metrics.quality[i].avg_word_length;
        else if (method_id == "quality_cpd")
            out[id] = metrics.quality[i].cpd;
        else if (method_id == "difficulty_composite")
            out[id] = metrics.difficulty[i];
        else
            throw Error("unknown ranked method id: " + method_id);
    }
    return out;
}

std::size_t method_k(const MethodSpec& method, const RunConfig& cfg, std::size_t n) {
    std::size_t k = cfg.cluster.k;
    auto it = method.params.find("k");
    if (it != method.params.end()) k = static_cast<std::size_t>(std::stoull(it->second));
    if (k == 0) k = default_cluster_count(n);
    return std::min(k, n);
}

ClusterAssignment build_assignment(const BenchmarkContext& ctx, const MethodSpec& method,
                                   std::uint64_t seed, const RunConfig& cfg) {
    const std::size_t n = ctx.benchmark.size();
    const std::size_t k = method_k(method, cfg, n);
    if (method.id == "cluster_kmeans_tfidf")
        return kmeans(ctx.tfidf->dense(), k, seed, cfg.cluster.kmeans_iters);
    if (method.id == "cluster_nmf_tfidf")
        return nmf_topics(*ctx.tfidf, std::min(k, ctx.tfidf->n_terms()), seed,
                          cfg.cluster.nmf_iters);
    if (method.id == "cluster_lda_tfidf")
        return lda_topics(ctx.benchmark, k, seed, cfg.cluster.lda_iters, cfg.cluster.alpha,
                          cfg.cluster.beta);
    static constexpr std::string_view kPrefix = "cluster_spectral_";
    if (method.id.rfind(kPrefix, 0) == 0) {
        const std::string tag = method.id.substr(kPrefix.size());
        const std::size_t nn = std::min<std::size_t>(cfg.cluster.n_neighbors, n - 1);
        return spectral_clusters(ctx.embeddings.at(tag), ctx.benchmark.ids(), k, nn, seed);
    }
    throw Error("unknown cluster method id: " + method.id);
}

GridInputs make_grid_inputs(const BenchmarkContext& ctx, const RunConfig& cfg) {
    GridInputs inputs;
    for (const auto& method : cfg.methods)
        if (method.kind() == MethodSpec::Kind::Ranked)
            inputs.scores[method.id] =
                metric_scores(ctx.benchmark, *ctx.metrics, method.id);

    // One clustering per (stratified method, seed), run in parallel and merged
    // in a fixed order.
    std::vector<std::pair<const MethodSpec*, std::uint64_t>> tasks;
    for (const auto& method : cfg.methods)
        if (method.kind() == MethodSpec::Kind::Stratified)
            for (std::uint64_t seed : cfg.seeds) tasks.emplace_back(&method, seed);
    std::vector<ClusterAssignment> built(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
        built[i] = build_assignment(ctx, *tasks[i].first, tasks[i].second, cfg);
    });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        inputs.assignments[tasks[i].first->id][tasks[i].second] = std::move(built[i]);
    return inputs;
}

/// Internal consistency gate run before plans are written: size rule plus the
/// nested-prefix property for random and ranked methods.
void validate_plans(const Benchmark& benchmark, const std::vector<MethodSpec>& methods,
                    const std::vector<SubsetPlan>& plans) {
    std::map<std::string, MethodSpec::Kind> kind;
    for (const auto& m : methods) kind[m.id] = m.kind();

    std::map<std::pair<std::string, std::uint64_t>, std::vector<const SubsetPlan*>> series;
    for (const auto& plan : plans) {
        if (plan.ids.size() != subset_size(plan.rate_pct, benchmark.size()))
            throw Error("plan size violates the size rule: " + plan.method + " rate " +
                        std::to_string(plan.rate_pct));
        std::set<std::string> unique(plan.ids.begin(), plan.ids.end());
        if (unique.size() != plan.ids.size())
            throw Error("plan has duplicate ids: " + plan.method);
        series[{plan.method, plan.seed}].push_back(&plan);
    }
    for (auto& [key, group] : series) {
        if (kind[key.first] == MethodSpec::Kind::Stratified) continue;
        std::sort(group.begin(), group.end(),
                  [](const SubsetPlan* a, const SubsetPlan* b) { return a->rate_pct < b->rate_pct; });
        for (std::size_t i = 1; i < group.size(); ++i) {
            const auto& lo = group[i - 1]->ids;
            const auto& hi = group[i]->ids;
            if (!std::equal(lo.begin(), lo.end(), hi.begin()))
                throw Error("plans are not nested for method " + key.first);
        }
    }
}

void write_plan_files(const RunConfig& cfg, const BenchmarkContext& ctx,
                      const std::vector<SubsetPlan>& plans, const std::string& prefix) {
    for (const auto& method : cfg.methods) {
        std::vector<SubsetPlan> subset;
        for (const auto& plan : plans)
            if (plan.method == method.id) subset.push_back(plan);
        write_text_file(cfg.out_dir / ctx.benchmark.name() / (prefix + method.id + ".jsonl"),
                        serialize_plans(subset));
    }
}

void write_resolved_config(const RunConfig& cfg) {
    write_text_file(cfg.out_dir / "config.resolved", cfg.resolved_json());
}

std::string metrics_csv(const Benchmark& benchmark, const MetricsBundle& metrics) {
    std::string out =
        "sample_id,spelling_errors,avg_word_length,repeating_words,lexical_diversity,cpd,"
        "difficult_pct,dale_chall,flesch,gunning_fog,difficulty\n";
    for (std::size_t i = 0; i < benchmark.size(); ++i) {
        const auto& q = metrics.quality[i];
        const auto& r = metrics.readability[i];
        out += benchmark.at(i).id;
        out += ',' + std::to_string(q.spelling_errors);
        out += ',' + format_double(q.avg_word_length);
        out += ',' + std::to_string(q.repeating_words);
        out += ',' + format_double(q.lexical_diversity);
        out += ',' + format_double(q.cpd);
        out += ',' + format_double(r.difficult_pct);
        out += ',' + format_double(r.dale_chall);
        out += ',' + format_double(r.flesch);
        out += ',' + format_double(r.gunning_fog);
        out += ',' + format_double(metrics.difficulty[i]);
        out += '\n';
    }
    return out;
}

std::vector<std::uint64_t> seeds_for(const MethodSpec& method, const RunConfig& cfg) {
    if (method.kind() == MethodSpec::Kind::Ranked) return {cfg.seeds.front()};
    return cfg.seeds;
}

ordered_json adaptive_record(const std::string& benchmark, const AdaptiveReport& report) {
    ordered_json j;
    j["benchmark"] = benchmark;
    j["selected"] = report.selected;
    j["window"] = {report.window_lo, report.window_hi};
    j["threshold"] = report.threshold;
    ordered_json per;
    for (const auto& [method, entry] : report.per_method) {
        ordered_json e;
        e["mean_pearson"] = entry.mean_pearson;
        e["mean_wd"] = entry.mean_wd;
        e["mean_variance"] = entry.mean_variance;
        if (entry.smallest_rate_at_threshold >= 0)
            e["smallest_rate_at_threshold"] = entry.smallest_rate_at_threshold;
        else
            e["smallest_rate_at_threshold"] = nullptr;
        per[method] = e;
    }
    j["per_method"] = per;
    return j;
}

}  // namespace

void run_profile(const RunConfig& cfg) {
    write_resolved_config(cfg);
    const Dictionaries dicts = load_dictionaries(cfg);
    for (const auto& bc : cfg.benchmarks) {
        Needs needs;
        BenchmarkContext ctx = load_context(bc, cfg, &dicts, needs);
        const MetricsBundle metrics = compute_metrics(ctx.benchmark, dicts, cfg);
        write_text_file(cfg.out_dir / ctx.benchmark.name() / "metrics.csv",
                        metrics_csv(ctx.benchmark, metrics));
    }
}

void run_sample(const RunConfig& cfg) {
    write_resolved_config(cfg);
    std::optional<Dictionaries> dicts;
    if (needs_metrics(cfg.methods)) dicts = load_dictionaries(cfg);

    for (const auto& bc : cfg.benchmarks) {
        Needs needs;
        needs.metrics = needs_metrics(cfg.methods);
        needs.tfidf = needs_tfidf(cfg.methods);
        needs.embedding_tags = spectral_tags(cfg.methods);
        BenchmarkContext ctx = load_context(bc, cfg, dicts ? &*dicts : nullptr, needs);
        const GridInputs inputs = make_grid_inputs(ctx, cfg);
        const std::vector<SubsetPlan> plans =
            build_plan_grid(ctx.benchmark, cfg.methods, cfg.rates, cfg.seeds, inputs);
        validate_plans(ctx.benchmark, cfg.methods, plans);
        write_plan_files(cfg, ctx, plans, "plans_");
    }
}

namespace {

struct CurveData {
    std::vector<BenchmarkContext> contexts;
    // plans[benchmark][method id] in config method order
    std::vector<std::map<std::string, std::vector<SubsetPlan>>> plans;
    std::vector<ScoreVector> fullsets;
};

CurveData prepare_curves(const RunConfig& cfg) {
    std::optional<Dictionaries> dicts;
    if (needs_metrics(cfg.methods)) dicts = load_dictionaries(cfg);

    CurveData data;
    for (const auto& bc : cfg.benchmarks) {
        Needs needs;
        needs.results = true;
        needs.metrics = needs_metrics(cfg.methods);
        needs.tfidf = needs_tfidf(cfg.methods);
        needs.embedding_tags = spectral_tags(cfg.methods);
        BenchmarkContext ctx = load_context(bc, cfg, dicts ? &*dicts : nullptr, needs);
        if (ctx.results->model_count() < 2)
            throw ModelSetMismatch("benchmark '" + bc.name +
                                   "' has fewer than 2 models in its results");

        const GridInputs inputs = make_grid_inputs(ctx, cfg);
        const std::vector<SubsetPlan> all_plans =
            build_plan_grid(ctx.benchmark, cfg.methods, cfg.rates, cfg.seeds, inputs);
        validate_plans(ctx.benchmark, cfg.methods, all_plans);

        std::map<std::string, std::vector<SubsetPlan>> by_method;
        for (const auto& plan : all_plans) by_method[plan.method].push_back(plan);

        ScoreVector fullset;
        fullset.models = ctx.results->models;
        fullset.scores = ctx.results->full_scores();

        data.contexts.push_back(std::move(ctx));
        data.plans.push_back(std::move(by_method));
        data.fullsets.push_back(std::move(fullset));
    }
    return data;
}

void write_winrate_outputs(const RunConfig& cfg, const CurveData& data) {
    const std::size_t n_bench = data.contexts.size();
    std::vector<std::string> names;
    for (const auto& ctx : data.contexts) names.push_back(ctx.benchmark.name());

    const WinRateTable full_table = win_rate(data.fullsets, names);

    std::string table_csv = "benchmark,model,win_rate\n";
    for (std::size_t b = 0; b < n_bench; ++b)
        for (std::size_t m = 0; m < full_table.models.size(); ++m)
            table_csv += names[b] + ',' + full_table.models[m] + ',' +
                         format_double(full_table.per_benchmark[b][m]) + '\n';
    for (std::size_t m = 0; m < full_table.models.size(); ++m)
        table_csv +=
            "average," + full_table.models[m] + ',' + format_double(full_table.average[m]) + '\n';
    write_text_file(cfg.out_dir / "winrate.csv", table_csv);

    // Rank preservation of average win-rates per (method, rate), mean over seeds.
    std::string curves_csv = "method,rate_pct,pearson,n_seeds\n";
    for (const auto& method : cfg.methods) {
        const std::vector<std::uint64_t> seeds = seeds_for(method, cfg);
        for (int rate : cfg.rates) {
            double sum_p = 0.0;
            std::size_t n_seeds = 0;
            for (std::uint64_t seed : seeds) {
                std::vector<ScoreVector> subset_vectors;
                for (std::size_t b = 0; b < n_bench; ++b) {
                    const SubsetPlan* plan = nullptr;
                    for (const auto& p : data.plans[b].at(method.id))
                        if (p.rate_pct == rate && p.seed == seed) {
                            plan = &p;
                            break;
                        }
                    if (!plan) throw Error("missing plan for winrate aggregation");
                    subset_vectors.push_back(subset_scores(*data.contexts[b].results, plan->ids));
                }
                const WinRateTable table = win_rate(subset_vectors, names);
                sum_p += pearson(table.average, full_table.average);
                ++n_seeds;
            }
            curves_csv += method.id + ',' + std::to_string(rate) + ',' +
                          format_double(sum_p / static_cast<double>(n_seeds)) + ',' +
                          std::to_string(n_seeds) + '\n';
        }
    }
    write_text_file(cfg.out_dir / "winrate_curves.csv", curves_csv);
}

}  // namespace

void run_curve(const RunConfig& cfg, bool with_winrate) {
    write_resolved_config(cfg);
    CurveData data = prepare_curves(cfg);

    std::string curves_csv = "benchmark,method,rate_pct,pearson,spearman,wd,variance,n_seeds\n";
    std::string adaptive_lines;
    for (std::size_t b = 0; b < data.contexts.size(); ++b) {
        const BenchmarkContext& ctx = data.contexts[b];
        write_plan_files(cfg, ctx, [&] {
            std::vector<SubsetPlan> flat;
            for (const auto& [method, plans] : data.plans[b])
                flat.insert(flat.end(), plans.begin(), plans.end());
            return flat;
        }(), "plans_");

        // Per-method curves, computed in parallel, appended in config order.
        std::vector<std::vector<FidelityPoint>> per_method(cfg.methods.size());
        parallel_for(cfg.methods.size(), cfg.jobs, [&](std::size_t m) {
            per_method[m] = fidelity_curve(*ctx.results, data.plans[b].at(cfg.methods[m].id),
                                           data.fullsets[b]);
        });

        std::map<std::string, std::vector<FidelityPoint>> curves;
        for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
            for (const auto& point : per_method[m]) {
                curves_csv += ctx.benchmark.name() + ',' + point.method + ',' +
                              std::to_string(point.rate_pct) + ',' +
                              format_double(point.pearson) + ',' +
                              format_double(point.spearman) + ',' + format_double(point.wd) +
                              ',' + format_double(point.variance) + ',' +
                              std::to_string(point.n_seeds) + '\n';
            }
            curves[cfg.methods[m].id] = std::move(per_method[m]);
        }

        const AdaptiveReport report =
            adaptive_select(curves, cfg.window_lo, cfg.window_hi, cfg.adaptive_threshold);
        adaptive_lines += adaptive_record(ctx.benchmark.name(), report).dump() + "\n";
    }

    write_text_file(cfg.out_dir / "curves.csv", curves_csv);
    write_text_file(cfg.out_dir / "adaptive.jsonl", adaptive_lines);
    if (with_winrate) write_winrate_outputs(cfg, data);
}

void run_winrate(const RunConfig& cfg) {
    write_resolved_config(cfg);
    const CurveData data = prepare_curves(cfg);
    write_winrate_outputs(cfg, data);
}

namespace {

// -- redundancy helpers -------------------------------------------------------

FingerprintMap load_fingerprints(const RunConfig& cfg) {
    FingerprintMap out;
    if (cfg.redundancy.fingerprints.empty()) return out;
    const std::string content = read_text_file(cfg.redundancy.fingerprints);
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded())
            throw SchemaError("invalid fingerprint record", line_no);
        ComplexityFingerprint fp;
        fp.time_s = record.at("time_s").get<double>();
        fp.mem_bytes = record.at("mem_bytes").get<double>();
        out[{record.at("benchmark").get<std::string>(), record.at("id").get<std::string>()}] =
            fp;
    }
    return out;
}

void measure_missing_fingerprints(const RunConfig& cfg,
                                  const std::vector<BenchmarkContext>& contexts,
                                  const std::vector<RedundantPair>& candidates,
                                  FingerprintMap& fingerprints) {
    if (cfg.redundancy.runner_cmd.empty()) return;
    LocalProcessRunner runner(cfg.redundancy.runner_cmd);

    std::map<std::string, const BenchmarkContext*> by_name;
    for (const auto& ctx : contexts) by_name[ctx.benchmark.name()] = &ctx;

    std::set<PairKey> wanted;
    for (const auto& pair : candidates) {
        wanted.insert(pair.a);
        wanted.insert(pair.b);
    }
    for (const PairKey& key : wanted) {
        if (fingerprints.count(key)) continue;
        const BenchmarkContext* ctx = by_name.at(key.first);
        const Sample& sample = ctx->benchmark.at(ctx->benchmark.index_of(key.second));
        const auto sol = sample.aux.find(cfg.redundancy.solution_field);
        const auto tst = sample.aux.find(cfg.redundancy.tests_field);
        if (sol == sample.aux.end() || tst == sample.aux.end()) continue;  // stays unknown
        fingerprints[key] = measure_fingerprint(runner, sol->second, tst->second);
    }
}

ReviewMap collect_reviews(const RunConfig& cfg, const std::vector<BenchmarkContext>& contexts,
                          const std::vector<RedundantPair>& survivors) {
    ReviewMap reviews;
    if (survivors.empty()) return reviews;

    ReviewClient::Options options;
    options.url = cfg.redundancy.review_url;
    options.model = cfg.redundancy.review_model;
    options.max_in_flight = cfg.redundancy.max_in_flight;
    options.cache_dir = cfg.redundancy.cache_dir.empty() ? cfg.out_dir / "review_cache"
                                                         : cfg.redundancy.cache_dir;
    if (const char* token = std::getenv("SUBLIME_REVIEW_TOKEN")) options.token = token;
    ReviewClient client(options);

    std::map<std::string, const BenchmarkContext*> by_name;
    for (const auto& ctx : contexts) by_name[ctx.benchmark.name()] = &ctx;
    const auto item_for = [&](const RedundantPair& pair) {
        const auto text_and_solution = [&](const PairKey& key) {
            const BenchmarkContext* ctx = by_name.at(key.first);
            const Sample& sample = ctx->benchmark.at(ctx->benchmark.index_of(key.second));
            const auto sol = sample.aux.find(cfg.redundancy.solution_field);
            return std::pair<std::string, std::string>(
                sample.text, sol == sample.aux.end() ? "" : sol->second);
        };
        const auto [pa, sa] = text_and_solution(pair.a);
        const auto [pb, sb] = text_and_solution(pair.b);
        return ReviewItem{pa, sa, pb, sb};
    };

    std::vector<ReviewItem> items;
    items.reserve(survivors.size());
    for (const auto& pair : survivors) items.push_back(item_for(pair));
    const std::vector<int> scores = client.review_all(items);
    for (std::size_t i = 0; i < survivors.size(); ++i)
        reviews[{survivors[i].a, survivors[i].b}] = scores[i];
    return reviews;
}

/// id -> partner keys, per benchmark name, over redundant pairs only.
std::map<std::string, std::map<std::string, std::vector<PairKey>>> partner_index(
    const std::vector<RedundantPair>& pairs) {
    std::map<std::string, std::map<std::string, std::vector<PairKey>>> partners;
    for (const auto& pair : pairs) {
        if (pair.verdict != Verdict::Redundant) continue;
        partners[pair.a.first][pair.a.second].push_back(pair.b);
        partners[pair.b.first][pair.b.second].push_back(pair.a);
    }
    return partners;
}

ClusterAssignment restrict_assignment(const ClusterAssignment& full, const Benchmark& full_bench,
                                      const Benchmark& pool) {
    ClusterAssignment out;
    out.k = full.k;
    out.rank_order = full.rank_order;
    out.labels.reserve(pool.size());
    out.rank_value.reserve(pool.size());
    for (const auto& sample : pool.samples()) {
        const std::size_t idx = full_bench.index_of(sample.id);
        out.labels.push_back(full.labels[idx]);
        out.rank_value.push_back(full.rank_value[idx]);
    }
    return out;
}

SubsetPlan sample_one(const Benchmark& pool, const MethodSpec& method, int rate,
                      std::uint64_t seed, const GridInputs& inputs, const Benchmark& full) {
    switch (method.kind()) {
        case MethodSpec::Kind::Random:
            return sample_random(pool, rate, seed);
        case MethodSpec::Kind::Ranked: {
            SubsetPlan plan = sample_by_score(pool, inputs.scores.at(method.id),
                                              method.direction, rate, method.id);
            plan.seed = seed;
            return plan;
        }
        case MethodSpec::Kind::Stratified: {
            const ClusterAssignment restricted =
                restrict_assignment(inputs.assignments.at(method.id).at(seed), full, pool);
            return sample_stratified(pool, restricted, rate, seed, method.id);
        }
    }
    throw Error("unreachable method kind");
}

struct MrCurvePoint {
    std::string mode;  // "M" or "MR"
    std::string method;
    int rate_pct = 0;
    double mean_pearson = 0.0;
    double mean_total = 0.0;
    std::size_t n_seeds = 0;
};

}  // namespace

void run_redundancy(const RunConfig& cfg, bool mr_mode) {
    write_resolved_config(cfg);
    if (cfg.benchmarks.size() < 2)
        throw Error("redundancy analysis needs at least 2 benchmarks");

    const bool needs_sampling_inputs = mr_mode;
    std::optional<Dictionaries> dicts;
    if (needs_sampling_inputs && needs_metrics(cfg.methods)) dicts = load_dictionaries(cfg);

    std::vector<BenchmarkContext> contexts;
    for (const auto& bc : cfg.benchmarks) {
        Needs needs;
        needs.results = !bc.results.empty();
        needs.metrics = needs_sampling_inputs && needs_metrics(cfg.methods);
        needs.tfidf = needs_sampling_inputs && needs_tfidf(cfg.methods);
        needs.embedding_tags = needs_sampling_inputs ? spectral_tags(cfg.methods)
                                                     : std::vector<std::string>{};
        const std::string tag = cfg.redundancy.embedding_tag.empty()
                                    ? (bc.embeddings.empty() ? "" : bc.embeddings.begin()->first)
                                    : cfg.redundancy.embedding_tag;
        if (tag.empty())
            throw Error("benchmark '" + bc.name + "' has no embeddings for redundancy search");
        if (std::find(needs.embedding_tags.begin(), needs.embedding_tags.end(), tag) ==
            needs.embedding_tags.end())
            needs.embedding_tags.push_back(tag);
        BenchmarkContext ctx = load_context(bc, cfg, dicts ? &*dicts : nullptr, needs);
        contexts.push_back(std::move(ctx));
    }
    const auto redundancy_tag = [&](const BenchmarkContext& ctx) {
        return cfg.redundancy.embedding_tag.empty() ? ctx.config->embeddings.begin()->first
                                                    : cfg.redundancy.embedding_tag;
    };

    // Stage 1..3: candidates, complexity, review (or a precomputed pair file).
    std::vector<RedundantPair> pairs;
    FunnelCounts counts;
    if (!cfg.redundancy.pairs.empty()) {
        pairs = parse_pairs(read_text_file(cfg.redundancy.pairs));
        counts.candidates = pairs.size();
        for (const auto& pair : pairs) {
            if (pair.verdict != Verdict::FilteredComplexity) ++counts.after_complexity;
            if (pair.verdict == Verdict::Redundant) ++counts.after_review;
        }
    } else {
        std::vector<RedundantPair> candidates;
        for (std::size_t i = 0; i < contexts.size(); ++i)
            for (std::size_t j = i + 1; j < contexts.size(); ++j) {
                const auto batch = candidate_pairs(
                    contexts[i].benchmark.name(), contexts[i].embeddings.at(redundancy_tag(contexts[i])),
                    contexts[j].benchmark.name(), contexts[j].embeddings.at(redundancy_tag(contexts[j])),
                    cfg.redundancy.tau);
                candidates.insert(candidates.end(), batch.begin(), batch.end());
            }

        FingerprintMap fingerprints = load_fingerprints(cfg);
        measure_missing_fingerprints(cfg, contexts, candidates, fingerprints);

        StageConfig stages;
        stages.complexity_enabled = cfg.redundancy.complexity_enabled;
        stages.review_enabled = cfg.redundancy.review_enabled;
        stages.unknown_passes = cfg.redundancy.unknown_passes;
        stages.factor = cfg.redundancy.factor;
        stages.review_threshold = cfg.redundancy.review_threshold;

        ReviewMap reviews;
        if (stages.review_enabled) {
            // Review only the pairs that survived the cheaper stages.
            StageConfig pre = stages;
            pre.review_enabled = false;
            std::vector<RedundantPair> pre_pairs =
                classify_pairs(candidates, fingerprints, {}, pre, nullptr);
            std::vector<RedundantPair> survivors;
            for (const auto& pair : pre_pairs)
                if (pair.verdict == Verdict::Redundant) survivors.push_back(pair);
            reviews = collect_reviews(cfg, contexts, survivors);
        }
        pairs = classify_pairs(std::move(candidates), fingerprints, reviews, stages, &counts);
    }

    write_text_file(cfg.out_dir / "pairs.jsonl", serialize_pairs(pairs));

    // Match rate per funnel stage whenever binary results are available.
    ordered_json report;
    report["benchmarks"] = ordered_json::array();
    for (const auto& ctx : contexts) report["benchmarks"].push_back(ctx.benchmark.name());
    report["pairs"] = {{"semantic", counts.candidates},
                       {"complexity", counts.after_complexity},
                       {"review", counts.after_review}};

    const auto stage_match_rate = [&](auto&& keep) -> ordered_json {
        // Pool pair agreement across all benchmark pairs that have results.
        double total = 0.0;
        std::size_t n_pairs = 0;
        try {
            for (std::size_t i = 0; i < contexts.size(); ++i)
                for (std::size_t j = i + 1; j < contexts.size(); ++j) {
                    if (!contexts[i].results || !contexts[j].results) continue;
                    std::vector<RedundantPair> selected;
                    for (const auto& pair : pairs)
                        if (pair.a.first == contexts[i].benchmark.name() &&
                            pair.b.first == contexts[j].benchmark.name() && keep(pair))
                            selected.push_back(pair);
                    if (selected.empty()) continue;
                    total += match_rate(selected, *contexts[i].results, *contexts[j].results) *
                             static_cast<double>(selected.size());
                    n_pairs += selected.size();
                }
        } catch (const NonBinaryScores&) {
            return nullptr;
        }
        if (n_pairs == 0) return nullptr;
        return total / static_cast<double>(n_pairs);
    };
    report["match_rate"] = {
        {"semantic", stage_match_rate([](const RedundantPair&) { return true; })},
        {"complexity", stage_match_rate([](const RedundantPair& p) {
             return p.verdict != Verdict::FilteredComplexity &&
                    p.complexity_match != Tri::Unknown;
         })},
        {"review", stage_match_rate(
                       [](const RedundantPair& p) { return p.verdict == Verdict::Redundant; })}};

    if (!mr_mode) {
        write_text_file(cfg.out_dir / "redundancy_report.json", report.dump(2) + "\n");
        return;
    }

    // -- MR mode: SuperSubset-threaded sampling and the MR-vs-M comparison ----
    for (const auto& ctx : contexts)
        if (!ctx.results)
            throw Error("MR comparison needs results for benchmark '" + ctx.benchmark.name() +
                        "'");
    const auto partners = partner_index(pairs);

    std::vector<GridInputs> inputs;
    std::vector<std::string> names;
    std::vector<ScoreVector> fullsets;
    for (auto& ctx : contexts) {
        inputs.push_back(make_grid_inputs(ctx, cfg));
        names.push_back(ctx.benchmark.name());
        ScoreVector sv;
        sv.models = ctx.results->models;
        sv.scores = ctx.results->full_scores();
        fullsets.push_back(std::move(sv));
    }
    const WinRateTable full_table = win_rate(fullsets, names);

    std::vector<MrCurvePoint> curve_points;
    std::map<std::string, std::map<std::string, double>> smallest_total;  // method -> mode
    std::vector<SubsetPlan> mr_plans;

    for (const std::string mode : {std::string("M"), std::string("MR")}) {
        for (const auto& method : cfg.methods) {
            const std::vector<std::uint64_t> seeds = seeds_for(method, cfg);
            for (int rate : cfg.rates) {
                double sum_p = 0.0;
                double sum_total = 0.0;
                for (std::uint64_t seed : seeds) {
                    SuperSubset sup{method.id, rate, {}};
                    std::vector<ScoreVector> subset_vectors;
                    std::size_t total = 0;
                    for (std::size_t b = 0; b < contexts.size(); ++b) {
                        const Benchmark& full = contexts[b].benchmark;
                        const std::map<std::string, std::vector<PairKey>> empty_partners;
                        const auto partner_it = partners.find(full.name());
                        const Benchmark pool =
                            mode == "MR"
                                ? mr_filter(full,
                                            partner_it == partners.end() ? empty_partners
                                                                         : partner_it->second,
                                            sup)
                                : full;
                        SubsetPlan plan =
                            sample_one(pool, method, rate, seed, inputs[b], full);
                        supersubset_update(sup, plan);
                        subset_vectors.push_back(
                            subset_scores(*contexts[b].results, plan.ids));
                        total += plan.ids.size();
                        if (mode == "MR") mr_plans.push_back(std::move(plan));
                    }
                    const WinRateTable table = win_rate(subset_vectors, names);
                    sum_p += pearson(table.average, full_table.average);
                    sum_total += static_cast<double>(total);
                }
                MrCurvePoint point;
                point.mode = mode;
                point.method = method.id;
                point.rate_pct = rate;
                point.n_seeds = seeds.size();
                point.mean_pearson = sum_p / static_cast<double>(seeds.size());
                point.mean_total = sum_total / static_cast<double>(seeds.size());
                curve_points.push_back(point);

                if (point.mean_pearson >= cfg.redundancy.pearson_threshold) {
                    auto& entry = smallest_total[method.id];
                    auto it = entry.find(mode);
                    if (it == entry.end() || point.mean_total < it->second)
                        entry[mode] = point.mean_total;
                }
            }
        }
    }

    // MR plan files, grouped per benchmark.
    for (const auto& ctx : contexts) {
        for (const auto& method : cfg.methods) {
            std::vector<SubsetPlan> subset;
            for (const auto& plan : mr_plans)
                if (plan.benchmark == ctx.benchmark.name() && plan.method == method.id)
                    subset.push_back(plan);
            write_text_file(
                cfg.out_dir / ctx.benchmark.name() / ("plans_mr_" + method.id + ".jsonl"),
                serialize_plans(subset));
        }
    }

    ordered_json comparison;
    comparison["pearson_threshold"] = cfg.redundancy.pearson_threshold;
    ordered_json methods_json;
    for (const auto& method : cfg.methods) {
        ordered_json entry;
        const auto it = smallest_total.find(method.id);
        entry["m_smallest_total"] =
            (it != smallest_total.end() && it->second.count("M")) ? ordered_json(it->second.at("M"))
                                                                  : ordered_json(nullptr);
        entry["mr_smallest_total"] = (it != smallest_total.end() && it->second.count("MR"))
                                         ? ordered_json(it->second.at("MR"))
                                         : ordered_json(nullptr);
        methods_json[method.id] = entry;
    }
    comparison["methods"] = methods_json;
    ordered_json curves_json = ordered_json::array();
    for (const auto& point : curve_points) {
        ordered_json e;
        e["mode"] = point.mode;
        e["method"] = point.method;
        e["rate_pct"] = point.rate_pct;
        e["mean_pearson"] = point.mean_pearson;
        e["mean_total"] = point.mean_total;
        e["n_seeds"] = point.n_seeds;
        curves_json.push_back(e);
    }
    comparison["curves"] = curves_json;
    report["comparison"] = comparison;
    write_text_file(cfg.out_dir / "redundancy_report.json", report.dump(2) + "\n");
    write_text_file(cfg.out_dir / "comparison.json", comparison.dump(2) + "\n");
}

int exit_code_for(const std::exception& error, const std::string& command) {
    const bool fidelity_cmd = command == "curve" || command == "winrate";
    const bool redundancy_cmd = command == "redundancy";

    if (dynamic_cast<const ReviewUnavailable*>(&error) ||
        dynamic_cast<const ReviewParseError*>(&error) ||
        dynamic_cast<const ExecutionFailed*>(&error) || dynamic_cast<const Timeout*>(&error) ||
        dynamic_cast<const NonBinaryScores*>(&error) || dynamic_cast<const EmptySet*>(&error) ||
        dynamic_cast<const KeyMismatch*>(&error))
        return 5;
    if (dynamic_cast<const ModelSetMismatch*>(&error) ||
        dynamic_cast<const WindowUncovered*>(&error))
        return 4;
    if (dynamic_cast<const MissingMetric*>(&error) || dynamic_cast<const BadRate*>(&error) ||
        dynamic_cast<const EmptyPool*>(&error) || dynamic_cast<const BadK*>(&error) ||
        dynamic_cast<const EmptyVocabulary*>(&error) ||
        dynamic_cast<const DegenerateInput*>(&error))
        return 3;
    if (dynamic_cast<const IncompleteMatrix*>(&error))
        return fidelity_cmd ? 4 : 2;
    if (dynamic_cast<const DimMismatch*>(&error))
        return fidelity_cmd ? 4 : (redundancy_cmd ? 5 : 2);
    if (dynamic_cast<const UnknownSampleId*>(&error) ||
        dynamic_cast<const MissingEmbedding*>(&error))
        return fidelity_cmd ? 4 : (redundancy_cmd ? 5 : 2);
    if (dynamic_cast<const SchemaError*>(&error) || dynamic_cast<const DuplicateId*>(&error) ||
        dynamic_cast<const BadScore*>(&error) || dynamic_cast<const BadVector*>(&error) ||
        dynamic_cast<const EmptyText*>(&error))
        return 2;
    return 1;
}

}  // namespace sublime::pipeline
