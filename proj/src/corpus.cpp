#include "sublime/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sublime/errors.hpp"

namespace sublime {

using nlohmann::json;

Benchmark::Benchmark(std::string name, std::vector<Sample> samples)
    : name_(std::move(name)), samples_(std::move(samples)) {
    index_.reserve(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        auto [it, inserted] = index_.emplace(samples_[i].id, i);
        if (!inserted) throw DuplicateId(samples_[i].id, i + 1);
    }
}

std::size_t Benchmark::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownSampleId(id);
    return it->second;
}

std::vector<std::string> Benchmark::ids() const {
    std::vector<std::string> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.id);
    return out;
}

std::vector<double> ResultMatrix::full_scores() const {
    std::vector<double> out(models.size(), 0.0);
    if (sample_ids.empty()) return out;
    for (std::size_t m = 0; m < models.size(); ++m) {
        double sum = 0.0;
        for (double v : scores[m]) sum += v;
        out[m] = sum / static_cast<double>(sample_ids.size());
    }
    return out;
}

const std::vector<double>& EmbeddingSet::at(const std::string& id) const {
    auto it = vectors.find(id);
    if (it == vectors.end()) throw MissingEmbedding(id);
    return it->second;
}

namespace {

std::string json_field_as_string(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    return in;
}

}  // namespace

Benchmark load_benchmark(const std::filesystem::path& path, const std::string& text_field,
                         const std::string& name) {
    std::ifstream in = open_or_throw(path);
    std::vector<Sample> samples;
    std::unordered_map<std::string, std::size_t> seen;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object())
            throw SchemaError("invalid JSON record", line_no);
        auto id_it = record.find("id");
        if (id_it == record.end()) throw SchemaError("missing field 'id'", line_no);
        std::string id = json_field_as_string(*id_it);
        if (id.empty()) throw SchemaError("empty sample id", line_no);
        if (!seen.emplace(id, line_no).second) throw DuplicateId(id, line_no);

        auto text_it = record.find(text_field);
        if (text_it == record.end())
            throw SchemaError("missing field '" + text_field + "'", line_no);

        Sample s;
        s.id = std::move(id);
        s.text = json_field_as_string(*text_it);
        for (const auto& [key, value] : record.items()) {
            if (key == "id" || key == text_field) continue;
            s.aux.emplace(key, json_field_as_string(value));
        }
        samples.push_back(std::move(s));
    }

    std::string bench_name = name.empty() ? path.stem().string() : name;
    return Benchmark(std::move(bench_name), std::move(samples));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

ResultMatrix load_results(const std::filesystem::path& path, const Benchmark& benchmark) {
    std::ifstream in = open_or_throw(path);

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw SchemaError("empty results file", 0);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_csv_line(line) != std::vector<std::string>{"model", "sample_id", "score"})
        throw SchemaError("expected header 'model,sample_id,score'", line_no);

    struct Cell {
        std::string model, sample_id;
        double score;
    };
    std::vector<Cell> cells;
    std::vector<std::string> models;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) throw SchemaError("expected 3 columns", line_no);
        double score = 0.0;
        auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), score);
        if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size())
            throw BadScore("unparsable score '" + fields[2] + "' at line " + std::to_string(line_no));
        if (!std::isfinite(score))
            throw BadScore("non-finite score at line " + std::to_string(line_no));
        if (!benchmark.contains(fields[1]))
            throw SchemaError("unknown sample_id '" + fields[1] + "'", line_no);
        models.push_back(fields[0]);
        cells.push_back({std::move(fields[0]), std::move(fields[1]), score});
    }

    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());

    ResultMatrix out;
    out.benchmark_name = benchmark.name();
    out.models = std::move(models);
    out.sample_ids = benchmark.ids();

    const std::size_t m = out.models.size();
    const std::size_t n = out.sample_ids.size();
    std::unordered_map<std::string, std::size_t> model_index;
    for (std::size_t i = 0; i < m; ++i) model_index.emplace(out.models[i], i);

    out.scores.assign(m, std::vector<double>(n, 0.0));
    std::vector<std::vector<bool>> filled(m, std::vector<bool>(n, false));
    for (const auto& cell : cells) {
        const std::size_t mi = model_index.at(cell.model);
        const std::size_t si = benchmark.index_of(cell.sample_id);
        if (filled[mi][si])
            throw SchemaError("duplicate cell for model '" + cell.model + "', sample '" +
                                  cell.sample_id + "'",
                              0);
        filled[mi][si] = true;
        out.scores[mi][si] = cell.score;
    }
    for (std::size_t mi = 0; mi < m; ++mi)
        for (std::size_t si = 0; si < n; ++si)
            if (!filled[mi][si]) throw IncompleteMatrix(out.models[mi], out.sample_ids[si]);

    return out;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);

    EmbeddingSet out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
            !record.contains("vector"))
            throw SchemaError("expected {id, vector} record", line_no);
        std::string id = json_field_as_string(record["id"]);
        const json& vec = record["vector"];
        if (!vec.is_array()) throw SchemaError("'vector' must be an array", line_no);

        std::vector<double> values;
        values.reserve(vec.size());
        for (const auto& v : vec) {
            if (!v.is_number())
                throw BadVector("non-numeric vector component at line " + std::to_string(line_no));
            double x = v.get<double>();
            if (!std::isfinite(x))
                throw BadVector("non-finite vector component at line " + std::to_string(line_no));
            values.push_back(x);
        }
        if (out.vectors.empty()) {
            out.dim = values.size();
        } else if (values.size() != out.dim) {
            throw DimMismatch("vector at line " + std::to_string(line_no) + " has dim " +
                              std::to_string(values.size()) + ", expected " + std::to_string(out.dim));
        }
        if (!out.vectors.emplace(std::move(id), std::move(values)).second)
            throw DuplicateId(json_field_as_string(record["id"]), line_no);
    }
    return out;
}

std::string serialize_benchmark(const Benchmark& benchmark, const std::string& text_field) {
    std::string out;
    for (const auto& s : benchmark.samples()) {
        json record;
        record["id"] = s.id;
        record[text_field] = s.text;
        for (const auto& [key, value] : s.aux) record[key] = value;
        out += record.dump();
        out += '\n';
    }
    return out;
}

}  // namespace sublime
