#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ragsearch/index.hpp"
#include "ragsearch/scoring.hpp"

namespace ragsearch {

// The rankers the query pipeline can run. `baseline` returns candidates in
// doc_id order, unscored; it exists for honest comparison rows in the
// evaluation harness.
enum class ScorerKind { tfidf_cosine, bm25, composite, baseline };

std::string_view scorer_name(ScorerKind kind);
// Accepts tfidf|tfidf_cosine|cosine, bm25, composite, baseline.
ScorerKind scorer_kind_from_name(std::string_view name);

struct ScorerConfig {
    ScorerKind kind = ScorerKind::bm25;
    Bm25Params bm25{};
    CompositeWeights composite{};
};

struct Query {
    std::string raw;
    std::vector<Term> terms;  // analyze(raw) under the snapshot's config
    std::optional<std::string> query_id;
};

struct ScoredHit {
    doc_id_t doc_id = 0;
    std::string external_id;
    double score = 0.0;  // always finite
};

// Top-k result list: sorted by score descending, ties broken by ascending
// doc_id, never more than top_k_count entries.
struct RankedList {
    std::vector<ScoredHit> hits;
    std::size_t top_k_count = 0;
};

// Union of the query terms' postings lists, ascending and deduplicated.
// Documents sharing no term score 0 under every implemented metric, so
// dropping them here loses nothing.
std::vector<doc_id_t> candidates(const IndexSnapshot& snapshot, std::span<const Term> terms);

// The k best hits under (score desc, doc_id asc); equivalent to sorting
// everything and truncating.
RankedList top_k(std::vector<ScoredHit> scored, std::size_t k);

// analyze -> candidates -> score -> top_k. Throws EmptyQuery when analysis
// yields no terms. Deterministic: identical inputs give identical output.
RankedList search(const IndexSnapshot& snapshot, std::string_view raw_query,
                  const ScorerConfig& scorer, std::size_t k);

}  // namespace ragsearch
