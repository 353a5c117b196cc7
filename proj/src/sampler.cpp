#include "sublime/sampler.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"
#include "sublime/rng.hpp"

namespace sublime {

MethodSpec::Kind MethodSpec::kind() const {
    if (id == "random") return Kind::Random;
    if (id.rfind("cluster_", 0) == 0) return Kind::Stratified;
    return Kind::Ranked;
}

MethodSpec MethodSpec::make(const std::string& id) {
    MethodSpec spec;
    spec.id = id;
    // Conventional directions: minimize error-like metrics, maximize the rest.
    if (id == "quality_spelling_error" || id == "quality_repeating_words")
        spec.direction = Direction::Ascending;
    else
        spec.direction = Direction::Descending;
    return spec;
}

std::size_t subset_size(int rate_pct, std::size_t n) {
    if (rate_pct < 1 || rate_pct > 100) throw BadRate(rate_pct);
    if (n == 0) throw EmptyPool();
    const std::size_t scaled = static_cast<std::size_t>(rate_pct) * n;
    return std::max<std::size_t>(1, (scaled + 50) / 100);
}

SubsetPlan sample_random(const Benchmark& benchmark, int rate_pct, std::uint64_t seed) {
    const std::size_t take = subset_size(rate_pct, benchmark.size());
    std::vector<std::string> ids = benchmark.ids();
    Rng rng(seed);
    for (std::size_t i = ids.size() - 1; i > 0; --i) {
        const std::size_t j = rng.bounded(i + 1);
        std::swap(ids[i], ids[j]);
    }
    ids.resize(take);
    return SubsetPlan{benchmark.name(), "random", rate_pct, seed, std::move(ids)};
}

SubsetPlan sample_by_score(const Benchmark& benchmark,
                           const std::map<std::string, double>& scores, Direction direction,
                           int rate_pct, const std::string& method_id) {
    const std::size_t take = subset_size(rate_pct, benchmark.size());
    std::vector<std::string> ids = benchmark.ids();
    for (const auto& id : ids)
        if (scores.find(id) == scores.end()) throw MissingMetric(id);

    std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
        const double sa = scores.at(a);
        const double sb = scores.at(b);
        if (sa != sb) return direction == Direction::Ascending ? sa < sb : sa > sb;
        return a < b;
    });
    ids.resize(take);
    return SubsetPlan{benchmark.name(), method_id, rate_pct, 0, std::move(ids)};
}

namespace {

/// Largest-remainder quotas with per-cluster caps. Exact integer arithmetic:
/// quota_c = k_total * size_c / n, remainders compared as integers.
std::vector<std::size_t> quota_allocation(const std::vector<std::size_t>& sizes,
                                          std::size_t k_total, std::size_t n) {
    const std::size_t k = sizes.size();
    std::vector<std::size_t> quota(k, 0);
    std::vector<std::size_t> remainder(k, 0);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t numer = k_total * sizes[c];
        quota[c] = std::min(numer / n, sizes[c]);
        remainder[c] = numer % n;
        assigned += quota[c];
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return a < b;
    });

    // Hand out the leftover one unit at a time; repeated passes cover the
    // deficit created by capped clusters.
    while (assigned < k_total) {
        bool progressed = false;
        for (std::size_t c : order) {
            if (assigned == k_total) break;
            if (quota[c] < sizes[c]) {
                ++quota[c];
                ++assigned;
                progressed = true;
            }
        }
        if (!progressed) break;  // all clusters full; k_total <= n makes this unreachable
    }
    return quota;
}

}  // namespace

SubsetPlan sample_stratified(const Benchmark& benchmark, const ClusterAssignment& assignment,
                             int rate_pct, std::uint64_t seed, const std::string& method_id) {
    const std::size_t n = benchmark.size();
    const std::size_t take = subset_size(rate_pct, n);
    if (assignment.labels.size() != n)
        throw Error("cluster assignment does not cover the benchmark");

    std::vector<std::vector<std::size_t>> members(assignment.k);
    for (std::size_t i = 0; i < n; ++i) members[assignment.labels[i]].push_back(i);

    std::vector<std::size_t> sizes(assignment.k);
    for (std::size_t c = 0; c < assignment.k; ++c) sizes[c] = members[c].size();
    const std::vector<std::size_t> quota = quota_allocation(sizes, take, n);

    const bool ascending = assignment.rank_order == RankOrder::AscendingDistance;
    std::vector<std::string> ids;
    ids.reserve(take);
    for (std::size_t c = 0; c < assignment.k; ++c) {
        auto& idx = members[c];
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (assignment.rank_value[a] != assignment.rank_value[b])
                return ascending ? assignment.rank_value[a] < assignment.rank_value[b]
                                 : assignment.rank_value[a] > assignment.rank_value[b];
            return benchmark.at(a).id < benchmark.at(b).id;
        });
        for (std::size_t i = 0; i < quota[c]; ++i) ids.push_back(benchmark.at(idx[i]).id);
    }
    return SubsetPlan{benchmark.name(), method_id, rate_pct, seed, std::move(ids)};
}

std::vector<SubsetPlan> build_plan_grid(const Benchmark& benchmark,
                                        const std::vector<MethodSpec>& methods,
                                        const std::vector<int>& rates,
                                        const std::vector<std::uint64_t>& seeds,
                                        const GridInputs& inputs) {
    if (seeds.empty()) throw Error("seed list must not be empty");
    for (int rate : rates)
        if (rate < 1 || rate > 100) throw BadRate(rate);

    std::vector<SubsetPlan> plans;
    for (const auto& method : methods) {
        for (int rate : rates) {
            try {
                switch (method.kind()) {
                    case MethodSpec::Kind::Random:
                        for (std::uint64_t seed : seeds)
                            plans.push_back(sample_random(benchmark, rate, seed));
                        break;
                    case MethodSpec::Kind::Ranked: {
                        auto it = inputs.scores.find(method.id);
                        if (it == inputs.scores.end())
                            throw Error("no metric values provided for method " + method.id);
                        SubsetPlan plan = sample_by_score(benchmark, it->second,
                                                          method.direction, rate, method.id);
                        plan.seed = seeds.front();
                        plans.push_back(std::move(plan));
                        break;
                    }
                    case MethodSpec::Kind::Stratified: {
                        auto it = inputs.assignments.find(method.id);
                        if (it == inputs.assignments.end())
                            throw Error("no cluster assignment provided for method " + method.id);
                        for (std::uint64_t seed : seeds) {
                            auto seed_it = it->second.find(seed);
                            if (seed_it == it->second.end())
                                throw Error("no cluster assignment for method " + method.id +
                                            " at seed " + std::to_string(seed));
                            plans.push_back(sample_stratified(benchmark, seed_it->second, rate,
                                                              seed, method.id));
                        }
                        break;
                    }
                }
            } catch (const BadRate&) {
                throw;
            } catch (const MissingMetric&) {
                throw;
            } catch (const EmptyPool&) {
                throw;
            } catch (const Error& e) {
                throw Error("method " + method.id + " at rate " + std::to_string(rate) + ": " +
                            e.what());
            }
        }
    }
    return plans;
}

Benchmark mr_filter(const Benchmark& benchmark,
                    const std::map<std::string, std::vector<PairKey>>& partners,
                    const SuperSubset& sup) {
    std::vector<Sample> kept;
    kept.reserve(benchmark.size());
    for (const auto& sample : benchmark.samples()) {
        auto it = partners.find(sample.id);
        bool redundant = false;
        if (it != partners.end()) {
            for (const PairKey& partner : it->second) {
                if (sup.ids.count(partner)) {
                    redundant = true;
                    break;
                }
            }
        }
        if (!redundant) kept.push_back(sample);
    }
    return Benchmark(benchmark.name(), std::move(kept));
}

std::string serialize_plans(const std::vector<SubsetPlan>& plans) {
    std::string out;
    for (const auto& plan : plans) {
        nlohmann::ordered_json record;
        record["benchmark"] = plan.benchmark;
        record["method"] = plan.method;
        record["rate_pct"] = plan.rate_pct;
        record["seed"] = plan.seed;
        record["ids"] = plan.ids;
        out += record.dump();
        out += '\n';
    }
    return out;
}

}  // namespace sublime
