#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sublime/cluster.hpp"
#include "sublime/corpus.hpp"

namespace sublime {

/// (benchmark name, sample id) — the cross-benchmark sample address.
using PairKey = std::pair<std::string, std::string>;

enum class Direction { Ascending, Descending };

/// One sampling method of the grid (random / ranked metric / cluster
/// stratified), identified by its id, e.g. "random", "quality_cpd",
/// "cluster_spectral_mteb".
struct MethodSpec {
    enum class Kind { Random, Ranked, Stratified };

    std::string id;
    Direction direction = Direction::Descending;
    std::map<std::string, std::string> params;

    Kind kind() const;

    /// Spec with the conventional direction for a known method id.
    static MethodSpec make(const std::string& id);
};

/// Deterministic record of one (benchmark, method, rate, seed) selection.
struct SubsetPlan {
    std::string benchmark;
    std::string method;
    int rate_pct = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> ids;
};

/// Running union of selected samples across processed benchmarks at a fixed
/// (method, rate); the redundancy filter consults it.
struct SuperSubset {
    std::string method;
    int rate_pct = 0;
    std::set<PairKey> ids;
};

/// max(1, round-half-up(rate_pct * n / 100)). Throws BadRate outside 1..100
/// and EmptyPool when n is zero.
std::size_t subset_size(int rate_pct, std::size_t n);

/// Seeded Fisher-Yates shuffle, then prefix. Plans at lower rates are
/// prefixes of plans at higher rates for the same seed.
SubsetPlan sample_random(const Benchmark& benchmark, int rate_pct, std::uint64_t seed);

/// Prefix of the (score, id)-sorted id list. Throws MissingMetric when a
/// sample has no score.
SubsetPlan sample_by_score(const Benchmark& benchmark,
                           const std::map<std::string, double>& scores, Direction direction,
                           int rate_pct, const std::string& method_id);

/// Largest-remainder quotas over cluster sizes (ties to the lower cluster
/// index, quotas capped at cluster size with deficits redistributed), then
/// within-cluster ranking by the assignment's rank order.
SubsetPlan sample_stratified(const Benchmark& benchmark, const ClusterAssignment& assignment,
                             int rate_pct, std::uint64_t seed, const std::string& method_id);

/// Precomputed per-method inputs consumed by build_plan_grid.
struct GridInputs {
    /// ranked method id -> sample id -> metric value
    std::map<std::string, std::map<std::string, double>> scores;
    /// stratified method id -> seed -> assignment
    std::map<std::string, std::map<std::uint64_t, ClusterAssignment>> assignments;
};

/// One plan per (method, rate, seed); ranked methods collapse the seed axis
/// (first seed echoed). Output order: methods as given, rates as given, then
/// seeds.
std::vector<SubsetPlan> build_plan_grid(const Benchmark& benchmark,
                                        const std::vector<MethodSpec>& methods,
                                        const std::vector<int>& rates,
                                        const std::vector<std::uint64_t>& seeds,
                                        const GridInputs& inputs);

/// Benchmark restricted to samples with no redundant partner currently in the
/// SuperSubset. `partners` maps a sample id of this benchmark to the partner
/// keys its redundancy pairs point at.
Benchmark mr_filter(const Benchmark& benchmark,
                    const std::map<std::string, std::vector<PairKey>>& partners,
                    const SuperSubset& sup);

/// Line-delimited plan records, canonical field order.
std::string serialize_plans(const std::vector<SubsetPlan>& plans);

}  // namespace sublime
