#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sublime {

/// Base class for every error raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- ingestion --------------------------------------------------------------

struct SchemaError : Error {
    std::size_t line;
    SchemaError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct DuplicateId : Error {
    std::string id;
    std::size_t line;
    DuplicateId(std::string sample_id, std::size_t line_no)
        : Error("duplicate sample id '" + sample_id + "' (line " + std::to_string(line_no) + ")"),
          id(std::move(sample_id)),
          line(line_no) {}
};

struct IncompleteMatrix : Error {
    std::string model;
    std::string sample_id;
    IncompleteMatrix(std::string model_id, std::string sid)
        : Error("missing score for model '" + model_id + "', sample '" + sid + "'"),
          model(std::move(model_id)),
          sample_id(std::move(sid)) {}
};

struct BadScore : Error {
    using Error::Error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct BadVector : Error {
    using Error::Error;
};

struct MissingEmbedding : Error {
    std::string id;
    explicit MissingEmbedding(std::string sample_id)
        : Error("no embedding vector for sample id '" + sample_id + "'"), id(std::move(sample_id)) {}
};

struct UnknownSampleId : Error {
    std::string id;
    explicit UnknownSampleId(std::string sample_id)
        : Error("sample id '" + sample_id + "' not in benchmark"), id(std::move(sample_id)) {}
};

// -- metrics ----------------------------------------------------------------

struct EmptyText : Error {
    EmptyText() : Error("readability metrics require at least one word") {}
};

struct EmptyVocabulary : Error {
    EmptyVocabulary() : Error("no term survived the document-frequency filters") {}
};

// -- clustering -------------------------------------------------------------

struct BadK : Error {
    using Error::Error;
};

struct DegenerateInput : Error {
    using Error::Error;
};

// -- sampling ---------------------------------------------------------------

struct MissingMetric : Error {
    std::string id;
    explicit MissingMetric(std::string sample_id)
        : Error("no metric value for sample id '" + sample_id + "'"), id(std::move(sample_id)) {}
};

struct BadRate : Error {
    int rate;
    explicit BadRate(int rate_pct)
        : Error("sampling rate " + std::to_string(rate_pct) + " outside 1..100"), rate(rate_pct) {}
};

struct EmptyPool : Error {
    EmptyPool() : Error("candidate pool is empty") {}
};

// -- fidelity ---------------------------------------------------------------

struct ModelSetMismatch : Error {
    using Error::Error;
};

struct WindowUncovered : Error {
    using Error::Error;
};

// -- redundancy -------------------------------------------------------------

struct ExecutionFailed : Error {
    std::string detail;
    explicit ExecutionFailed(std::string what_failed)
        : Error("execution failed: " + what_failed), detail(std::move(what_failed)) {}
};

struct Timeout : Error {
    Timeout() : Error("execution timed out") {}
};

struct ReviewUnavailable : Error {
    using Error::Error;
};

struct ReviewParseError : Error {
    std::string raw;
    explicit ReviewParseError(std::string response_text)
        : Error("could not parse a similarity score from review response"),
          raw(std::move(response_text)) {}
};

struct NonBinaryScores : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

struct KeyMismatch : Error {
    using Error::Error;
};

}  // namespace sublime
