#include "sublime/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "sublime/errors.hpp"

namespace sublime {

ScoreVector subset_scores(const ResultMatrix& results, const std::vector<std::string>& ids) {
    if (ids.empty()) throw EmptyPool();
    std::unordered_map<std::string, std::size_t> col;
    col.reserve(results.sample_ids.size());
    for (std::size_t i = 0; i < results.sample_ids.size(); ++i)
        col.emplace(results.sample_ids[i], i);

    std::vector<std::size_t> cols;
    cols.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = col.find(id);
        if (it == col.end()) throw UnknownSampleId(id);
        cols.push_back(it->second);
    }

    ScoreVector out;
    out.models = results.models;
    out.scores.resize(results.model_count(), 0.0);
    for (std::size_t m = 0; m < results.model_count(); ++m) {
        double sum = 0.0;
        for (std::size_t c : cols) sum += results.scores[m][c];
        out.scores[m] = sum / static_cast<double>(cols.size());
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimMismatch("pearson: length mismatch");
    if (x.size() < 2) throw DimMismatch("pearson: need at least 2 points");

    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;  // constant input
    if (sxy == sxx && sxx == syy) return 1.0;  // identical vectors, exactly
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks_desc(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;
    });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = shared;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimMismatch("spearman: length mismatch");
    const std::vector<double> rx = average_ranks_desc(x);
    const std::vector<double> ry = average_ranks_desc(y);
    return pearson(rx, ry);
}

WdValue wasserstein_1d(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimMismatch("wasserstein_1d: length mismatch");
    if (x.empty()) throw DimMismatch("wasserstein_1d: empty input");

    std::vector<double> sx(x.begin(), x.end());
    std::vector<double> sy(y.begin(), y.end());
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());

    double sum = 0.0;
    bool unit_interval = true;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        sum += std::abs(sx[i] - sy[i]);
        if (sx[i] < 0.0 || sx[i] > 1.0 || sy[i] < 0.0 || sy[i] > 1.0) unit_interval = false;
    }
    WdValue out;
    out.raw = sum / static_cast<double>(sx.size());
    out.scaled = unit_interval;
    return out;
}

std::vector<FidelityPoint> fidelity_curve(const ResultMatrix& results,
                                          const std::vector<SubsetPlan>& plans,
                                          const ScoreVector& fullset) {
    if (plans.empty()) throw Error("fidelity_curve: no plans given");
    const std::string& method = plans.front().method;
    for (const auto& plan : plans)
        if (plan.method != method)
            throw Error("fidelity_curve: plans mix methods '" + method + "' and '" + plan.method +
                        "'");
    if (results.model_count() < 2)
        throw ModelSetMismatch("fidelity needs at least 2 models");
    if (fullset.models != results.models)
        throw ModelSetMismatch("fullset score vector does not match matrix models");

    std::map<int, std::vector<const SubsetPlan*>> by_rate;
    for (const auto& plan : plans) by_rate[plan.rate_pct].push_back(&plan);

    std::vector<FidelityPoint> out;
    out.reserve(by_rate.size());
    for (auto& [rate, rate_plans] : by_rate) {
        std::sort(rate_plans.begin(), rate_plans.end(),
                  [](const SubsetPlan* a, const SubsetPlan* b) { return a->seed < b->seed; });
        std::vector<double> pearsons, spearmans, wds;
        for (const SubsetPlan* plan : rate_plans) {
            const ScoreVector sv = subset_scores(results, plan->ids);
            pearsons.push_back(pearson(sv.scores, fullset.scores));
            spearmans.push_back(spearman(sv.scores, fullset.scores));
            wds.push_back(wasserstein_1d(sv.scores, fullset.scores).reported());
        }
        const auto mean = [](const std::vector<double>& v) {
            return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        };
        FidelityPoint point;
        point.method = method;
        point.rate_pct = rate;
        point.n_seeds = pearsons.size();
        point.pearson = mean(pearsons);
        point.spearman = mean(spearmans);
        point.wd = mean(wds);
        if (pearsons.size() > 1) {
            double ss = 0.0;
            for (double p : pearsons) ss += (p - point.pearson) * (p - point.pearson);
            point.variance = ss / static_cast<double>(pearsons.size() - 1);
        }
        out.push_back(std::move(point));
    }
    return out;
}

WinRateTable win_rate(const std::vector<ScoreVector>& per_benchmark,
                      const std::vector<std::string>& benchmark_names) {
    if (per_benchmark.empty()) throw EmptySet("win_rate: no benchmarks");
    if (benchmark_names.size() != per_benchmark.size())
        throw Error("win_rate: benchmark name count mismatch");
    const std::vector<std::string>& models = per_benchmark.front().models;
    if (models.size() < 2) throw ModelSetMismatch("win_rate needs at least 2 models");
    for (const auto& sv : per_benchmark)
        if (sv.models != models)
            throw ModelSetMismatch("win_rate: benchmarks score different model sets");

    const double m = static_cast<double>(models.size());
    WinRateTable table;
    table.models = models;
    table.benchmarks = benchmark_names;
    table.average.assign(models.size(), 0.0);
    for (const auto& sv : per_benchmark) {
        const std::vector<double> ranks = average_ranks_desc(sv.scores);
        std::vector<double> rates(models.size());
        for (std::size_t i = 0; i < models.size(); ++i) {
            rates[i] = (m - ranks[i]) / (m - 1.0);
            table.average[i] += rates[i];
        }
        table.per_benchmark.push_back(std::move(rates));
    }
    for (double& v : table.average) v /= static_cast<double>(per_benchmark.size());

    std::vector<std::size_t> order(models.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (table.average[a] != table.average[b]) return table.average[a] > table.average[b];
        return models[a] < models[b];
    });
    for (std::size_t i : order) table.ranking.push_back(models[i]);
    return table;
}

AdaptiveReport adaptive_select(const std::map<std::string, std::vector<FidelityPoint>>& curves,
                               int window_lo, int window_hi, double threshold) {
    AdaptiveReport report;
    report.window_lo = window_lo;
    report.window_hi = window_hi;
    report.threshold = threshold;

    for (const auto& [method, points] : curves) {
        double sum_p = 0.0, sum_wd = 0.0, sum_var = 0.0;
        std::size_t in_window = 0;
        int smallest = -1;
        std::vector<const FidelityPoint*> sorted;
        for (const auto& p : points) sorted.push_back(&p);
        std::sort(sorted.begin(), sorted.end(),
                  [](const FidelityPoint* a, const FidelityPoint* b) {
                      return a->rate_pct < b->rate_pct;
                  });
        for (const FidelityPoint* p : sorted) {
            if (smallest < 0 && p->pearson >= threshold) smallest = p->rate_pct;
            if (p->rate_pct >= window_lo && p->rate_pct <= window_hi) {
                sum_p += p->pearson;
                sum_wd += p->wd;
                sum_var += p->variance;
                ++in_window;
            }
        }
        if (in_window == 0) continue;  // this curve does not cover the window
        AdaptiveReport::PerMethod entry;
        entry.mean_pearson = sum_p / static_cast<double>(in_window);
        entry.mean_wd = sum_wd / static_cast<double>(in_window);
        entry.mean_variance = sum_var / static_cast<double>(in_window);
        entry.smallest_rate_at_threshold = smallest;
        report.per_method.emplace(method, entry);
    }
    if (report.per_method.empty())
        throw WindowUncovered("no fidelity curve covers rates " + std::to_string(window_lo) +
                              ".." + std::to_string(window_hi));

    constexpr double kTol = 1e-6;
    const auto better = [&](const AdaptiveReport::PerMethod& a, const std::string& a_id,
                            const AdaptiveReport::PerMethod& b, const std::string& b_id) {
        if (a.mean_pearson > b.mean_pearson + kTol) return true;
        if (b.mean_pearson > a.mean_pearson + kTol) return false;
        if (a.mean_wd != b.mean_wd) return a.mean_wd < b.mean_wd;
        if (a.mean_variance != b.mean_variance) return a.mean_variance < b.mean_variance;
        return a_id < b_id;
    };
    const auto* best = &*report.per_method.begin();
    for (const auto& entry : report.per_method)
        if (better(entry.second, entry.first, best->second, best->first)) best = &entry;
    report.selected = best->first;
    return report;
}

}  // namespace sublime
