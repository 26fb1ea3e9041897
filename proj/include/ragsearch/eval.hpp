#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ragsearch/retrieval.hpp"

namespace ragsearch {

// Ground-truth relevance judgments: query id -> the set of relevant
// external document ids (each non-empty).
struct Qrels {
    std::map<std::string, std::set<std::string>> judgments;
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Set-overlap precision and recall of the retrieved list against the
// relevant set, with F1 their harmonic mean (0 when both are 0). Throws
// EmptyRelevantSet on an empty relevant set.
Metrics precision_recall_f1(std::span<const std::string> retrieved,
                            const std::set<std::string>& relevant);

struct EvalQuery {
    std::string query_id;
    std::string text;
};

struct EvalResult {
    std::string scorer_name;
    std::size_t k = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n_queries = 0;
    // Queries whose analysis produced no terms; they count as (0,0,0) above.
    std::size_t n_empty_queries = 0;
};

// Runs search() for every query and macro-averages per-query metrics.
// Throws MissingJudgment when a query id has no qrels entry. n_threads = 0
// picks a sensible default; results are identical for any thread count.
EvalResult evaluate_run(const IndexSnapshot& snapshot, std::span<const EvalQuery> queries,
                        const Qrels& qrels, const ScorerConfig& scorer, std::size_t k,
                        unsigned n_threads = 0);

enum class ReportFormat { table, csv, json };

ReportFormat report_format_from_name(std::string_view name);

// Deterministic rendering, rows in input order. CSV columns:
// scorer,k,precision,recall,f1,n_queries.
std::string emit_report(std::span<const EvalResult> results, ReportFormat format);

// The standard comparison ladder, in reporting order: unscored baseline,
// then BM25, TF-IDF cosine and the weighted composite.
std::vector<ScorerConfig> comparison_scorers(const Bm25Params& bm25,
                                             const CompositeWeights& composite);

}  // namespace ragsearch
