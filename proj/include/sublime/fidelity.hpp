#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sublime/corpus.hpp"
#include "sublime/sampler.hpp"

namespace sublime {

/// Per-model mean score over a sample-id set, models in matrix order.
struct ScoreVector {
    std::vector<std::string> models;
    std::vector<double> scores;
};

/// One point of a fidelity curve: how well a method preserved ranks and score
/// distribution at one rate, aggregated over seeds.
struct FidelityPoint {
    std::string method;
    int rate_pct = 0;
    double pearson = 0.0;
    double spearman = 0.0;
    double wd = 0.0;         // reported scale (x100 when inputs live in [0,1])
    double variance = 0.0;   // unbiased across-seed variance of pearson
    std::size_t n_seeds = 0;
};

ScoreVector subset_scores(const ResultMatrix& results, const std::vector<std::string>& ids);

/// Product-moment correlation; 0 when either input is constant. Inputs must
/// have equal length >= 2.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson over average ranks (ties averaged).
double spearman(std::span<const double> x, std::span<const double> y);

/// 1-D Wasserstein distance between equal-size multisets: mean absolute
/// difference of the sorted values. When both inputs lie in [0,1] the
/// reported value is x100 (scaled flag set).
struct WdValue {
    double raw = 0.0;
    bool scaled = false;
    double reported() const { return scaled ? raw * 100.0 : raw; }
};
WdValue wasserstein_1d(std::span<const double> x, std::span<const double> y);

/// Per-rate fidelity of one method's plans against the fullset score vector.
/// Points come back sorted by ascending rate.
std::vector<FidelityPoint> fidelity_curve(const ResultMatrix& results,
                                          const std::vector<SubsetPlan>& plans,
                                          const ScoreVector& fullset);

/// win-rate = (M - rank) / (M - 1), rank 1 = highest score, ties averaged.
struct WinRateTable {
    std::vector<std::string> models;
    std::vector<std::string> benchmarks;
    std::vector<std::vector<double>> per_benchmark;  // [benchmark][model]
    std::vector<double> average;                     // [model]
    std::vector<std::string> ranking;                // by descending average
};
WinRateTable win_rate(const std::vector<ScoreVector>& per_benchmark,
                      const std::vector<std::string>& benchmark_names);

/// Outcome of the adaptive method choice over the low-rate window.
struct AdaptiveReport {
    struct PerMethod {
        double mean_pearson = 0.0;
        double mean_wd = 0.0;
        double mean_variance = 0.0;
        int smallest_rate_at_threshold = -1;  // -1: threshold never reached
    };
    std::string selected;
    int window_lo = 5;
    int window_hi = 25;
    double threshold = 0.9;
    std::map<std::string, PerMethod> per_method;
};

/// argmax of mean pearson over the window; ties within 1e-6 broken by lower
/// mean wd, then lower mean variance, then method id. Throws WindowUncovered
/// when no curve has a point inside the window.
AdaptiveReport adaptive_select(const std::map<std::string, std::vector<FidelityPoint>>& curves,
                               int window_lo = 5, int window_hi = 25, double threshold = 0.9);

/// Average ranks (1 = largest value; ties share the mean rank).
std::vector<double> average_ranks_desc(std::span<const double> values);

}  // namespace sublime
