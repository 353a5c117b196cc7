#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace sublime {

/// One benchmark item: the unit everything downstream samples and scores.
struct Sample {
    std::string id;
    std::string text;
    std::map<std::string, std::string> aux;

    bool operator==(const Sample&) const = default;
};

/// Named, ordered sample collection. Order is the on-disk order and is stable
/// across loads; ids are unique within the benchmark.
class Benchmark {
public:
    Benchmark() = default;
    Benchmark(std::string name, std::vector<Sample> samples);

    const std::string& name() const { return name_; }
    const std::vector<Sample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    const Sample& at(std::size_t i) const { return samples_.at(i); }
    bool contains(const std::string& id) const { return index_.count(id) > 0; }
    /// Position of `id` in sample order; throws UnknownSampleId.
    std::size_t index_of(const std::string& id) const;

    std::vector<std::string> ids() const;

    bool operator==(const Benchmark& other) const {
        return name_ == other.name_ && samples_ == other.samples_;
    }

private:
    std::string name_;
    std::vector<Sample> samples_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// models x samples score matrix; the ground truth for all fidelity math.
/// Models are sorted lexicographically, sample ids follow benchmark order.
struct ResultMatrix {
    std::string benchmark_name;
    std::vector<std::string> models;
    std::vector<std::string> sample_ids;
    std::vector<std::vector<double>> scores;  // [model][sample]

    std::size_t model_count() const { return models.size(); }
    std::size_t sample_count() const { return sample_ids.size(); }

    /// Per-model mean over all samples: the full-benchmark score vector.
    std::vector<double> full_scores() const;
};

/// Precomputed per-sample embedding vectors, all of one dimension.
struct EmbeddingSet {
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    bool valid() const { return dim > 0 && !vectors.empty(); }
    /// Throws MissingEmbedding when `id` has no vector.
    const std::vector<double>& at(const std::string& id) const;
};

/// Reads line-delimited JSON records with fields `id` and `text_field`.
/// Remaining fields land in Sample::aux (non-string values keep their JSON
/// spelling). Benchmark name defaults to the file stem.
Benchmark load_benchmark(const std::filesystem::path& path, const std::string& text_field,
                         const std::string& name = "");

/// Reads `model,sample_id,score` CSV rows into a dense matrix covering every
/// (model, sample) pair exactly once.
ResultMatrix load_results(const std::filesystem::path& path, const Benchmark& benchmark);

/// Reads line-delimited `{"id":..., "vector":[...]}` records.
EmbeddingSet load_embeddings(const std::filesystem::path& path);

/// Canonical line-delimited form; load(serialize(b)) == b byte-for-byte.
std::string serialize_benchmark(const Benchmark& benchmark, const std::string& text_field);

}  // namespace sublime
