#pragma once

#include "sublime/config.hpp"

namespace sublime::pipeline {

/// `sublime profile`: per-sample quality and readability metrics.
void run_profile(const RunConfig& cfg);

/// `sublime sample`: subset plans for every (method, rate, seed).
void run_sample(const RunConfig& cfg);

/// `sublime curve`: fidelity curves + adaptive report (+ plans). With
/// `with_winrate` also the cross-benchmark win-rate aggregation.
void run_curve(const RunConfig& cfg, bool with_winrate);

/// `sublime winrate`: cross-benchmark win-rate table and rank-preservation
/// curves over average win-rates.
void run_winrate(const RunConfig& cfg);

/// `sublime redundancy`: semantic/complexity/review funnel and match rate;
/// with `mr_mode` also SuperSubset-filtered plans and the MR-vs-M comparison.
void run_redundancy(const RunConfig& cfg, bool mr_mode);

/// Exit code for a failed command: 2 schema, 3 sampling, 4 fidelity,
/// 5 redundancy, 1 anything else.
int exit_code_for(const std::exception& error, const std::string& command);

}  // namespace sublime::pipeline
