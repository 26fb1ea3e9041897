#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ragsearch/eval.hpp"
#include "ragsearch/index.hpp"

namespace ragsearch {

struct IngestDocument {
    std::string external_id;  // "{title}#{paragraph_index}"
    std::string title;
    std::string body;
};

struct IngestQuery {
    std::string query_id;  // the qas id
    std::string text;
    bool is_impossible = false;
};

struct IngestStats {
    std::size_t n_articles = 0;
    std::size_t n_paragraphs = 0;  // paragraphs seen, before deduplication
    std::size_t n_questions = 0;
    std::size_t n_impossible = 0;
    std::size_t n_deduped = 0;
};

struct IngestOutput {
    std::vector<IngestDocument> documents;
    std::vector<IngestQuery> queries;
    Qrels qrels;  // each question -> its source paragraph
    IngestStats stats;
};

// Parses SQuAD 2.0 JSON into documents (one per paragraph), queries (one
// per question, unanswerable ones included) and qrels. Paragraphs whose
// context is byte-equal after NFC normalization are deduplicated, with
// qrels pointed at the surviving document. Throws ParseError (with a JSON
// path in the message) or EmptyDataset.
IngestOutput parse_squad(std::string_view json_text);
IngestOutput parse_squad_file(const std::string& path);

struct SampleSpec {
    std::size_t n_paragraphs = 0;
    std::uint64_t seed = 0;
};

struct BenchmarkIndex {
    IndexSnapshot snapshot;
    std::vector<EvalQuery> queries;
    Qrels qrels;
    std::size_t n_dropped_queries = 0;  // relevant paragraph sampled out
};

// Indexes all paragraphs, or a seeded uniform sample; queries whose relevant
// paragraph was sampled out are dropped. The same seed always selects the
// same subset.
BenchmarkIndex build_benchmark_index(const IngestOutput& output, const AnalyzerConfig& analyzer,
                                     std::optional<SampleSpec> sample = std::nullopt);

}  // namespace ragsearch
