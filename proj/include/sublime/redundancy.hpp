#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sublime/corpus.hpp"
#include "sublime/sampler.hpp"

namespace sublime {

enum class Verdict { Candidate, FilteredComplexity, Redundant };
enum class Tri { False, True, Unknown };

std::string to_string(Verdict v);
std::string to_string(Tri t);

/// One cross-benchmark sample pair moving through the redundancy funnel.
struct RedundantPair {
    PairKey a;
    PairKey b;
    double cosine = 0.0;
    Tri complexity_match = Tri::Unknown;
    int llm_score = -1;  // -1: not reviewed
    Verdict verdict = Verdict::Candidate;
};

/// Empirical cost profile of one sample's reference solution on its tests.
struct ComplexityFingerprint {
    double time_s = 0.0;
    double mem_bytes = 0.0;
};

/// All cross pairs with cosine >= tau, sorted by descending cosine then ids.
/// Exact all-pairs computation.
std::vector<RedundantPair> candidate_pairs(const std::string& name_a, const EmbeddingSet& emb_a,
                                           const std::string& name_b, const EmbeddingSet& emb_b,
                                           double tau);

/// true iff max/min <= factor for both time and memory; nullopt when either
/// fingerprint is missing.
std::optional<bool> complexity_match(const std::optional<ComplexityFingerprint>& fp_a,
                                     const std::optional<ComplexityFingerprint>& fp_b,
                                     double factor = 4.0);

/// Contract for the external sandboxed runner that executes benchmark code.
class ExecRunner {
public:
    struct Outcome {
        enum class Status { Ok, Failed, TimedOut } status = Status::Failed;
        double wall_s = 0.0;
        double peak_bytes = 0.0;
        std::string detail;
    };
    virtual ~ExecRunner() = default;
    virtual Outcome run(const std::string& solution, const std::string& tests,
                        double timeout_s) = 0;
};

/// Median wall time and peak memory over 3 runs. Throws ExecutionFailed or
/// Timeout on runner trouble.
ComplexityFingerprint measure_fingerprint(ExecRunner& runner, const std::string& solution,
                                          const std::string& tests, double timeout_s = 30.0);

/// Shells out to a user-supplied command with {solution} {tests} {timeout}
/// placeholders; expects "status wall_s peak_bytes" on one output line.
class LocalProcessRunner : public ExecRunner {
public:
    explicit LocalProcessRunner(std::string command_template);
    Outcome run(const std::string& solution, const std::string& tests,
                double timeout_s) override;

private:
    std::string command_template_;
};

/// Which funnel stages run and their cuts.
struct StageConfig {
    bool complexity_enabled = true;
    bool review_enabled = true;
    bool unknown_passes = false;  // unmeasured complexity: pass through or drop
    double factor = 4.0;
    int review_threshold = 4;
};

struct FunnelCounts {
    std::size_t candidates = 0;
    std::size_t after_complexity = 0;
    std::size_t after_review = 0;
};

using FingerprintMap = std::map<PairKey, ComplexityFingerprint>;
using ReviewMap = std::map<std::pair<PairKey, PairKey>, int>;

/// Runs the enabled stages over semantic candidates; verdict = Redundant iff
/// a pair survives every enabled stage.
std::vector<RedundantPair> classify_pairs(std::vector<RedundantPair> candidates,
                                          const FingerprintMap& fingerprints,
                                          const ReviewMap& reviews, const StageConfig& config,
                                          FunnelCounts* counts = nullptr);

/// Mean over pairs of the fraction of models whose 0/1 outcome agrees on both
/// pair members. Requires binary scores and a shared model set.
double match_rate(const std::vector<RedundantPair>& pairs, const ResultMatrix& results_a,
                  const ResultMatrix& results_b);

/// Union of the plan's ids into the SuperSubset; idempotent. Throws
/// KeyMismatch when (method, rate) disagree.
void supersubset_update(SuperSubset& sup, const SubsetPlan& plan);

/// Line-delimited pair records with stage provenance.
std::string serialize_pairs(const std::vector<RedundantPair>& pairs);
std::vector<RedundantPair> parse_pairs(const std::string& jsonl);

}  // namespace sublime
