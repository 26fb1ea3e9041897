#include "ragsearch/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "ragsearch/errors.hpp"

namespace ragsearch {

namespace {

std::size_t candidate_slot(const std::vector<doc_id_t>& candidates, doc_id_t id) {
    auto it = std::lower_bound(candidates.begin(), candidates.end(), id);
    return static_cast<std::size_t>(it - candidates.begin());
}

std::vector<Term> sorted_distinct(std::span<const Term> terms) {
    std::vector<Term> out(terms.begin(), terms.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Term-at-a-time BM25 over the candidate array. Terms are visited in sorted
// order so each document accumulates contributions in exactly the same
// sequence as bm25_score() and the two agree bit for bit.
std::vector<double> bm25_column(const IndexSnapshot& snapshot,
                                const std::vector<Term>& distinct_terms,
                                const std::vector<doc_id_t>& candidates,
                                const Bm25Params& params) {
    std::vector<double> scores(candidates.size(), 0.0);
    for (const Term& term : distinct_terms) {
        const PostingsList* postings = snapshot.postings_for(term);
        if (postings == nullptr) continue;
        double term_idf = bm25_idf(snapshot.n_docs(), postings->size(), params.idf_variant);
        if (term_idf == 0.0) continue;
        for (const Posting& posting : *postings) {
            double k = bm25_length_norm(params, snapshot.doc(posting.doc_id).length_tokens,
                                        snapshot.avgdl());
            scores[candidate_slot(candidates, posting.doc_id)] +=
                bm25_term_contribution(term_idf, posting.term_frequency, k, params.k1);
        }
    }
    return scores;
}

// Term-at-a-time TF-IDF cosine. Dot products accumulate in term order and
// document norms are the snapshot's precomputed ones, which reproduces
// cosine_similarity() over full vectors exactly.
std::vector<double> cosine_column(const IndexSnapshot& snapshot,
                                  std::span<const Term> query_terms,
                                  const std::vector<doc_id_t>& candidates) {
    SparseVector query_vector = tfidf_vector(snapshot, term_frequencies(query_terms));
    double query_norm = query_vector.norm();

    std::vector<double> dots(candidates.size(), 0.0);
    for (const auto& [term, query_weight] : query_vector.entries()) {
        const PostingsList* postings = snapshot.postings_for(term);
        if (postings == nullptr) continue;  // nonzero weight implies df >= 1
        double term_idf = idf(snapshot.n_docs(), postings->size());
        for (const Posting& posting : *postings) {
            dots[candidate_slot(candidates, posting.doc_id)] +=
                query_weight * tfidf_weight(posting.term_frequency, term_idf);
        }
    }

    std::vector<double> scores(candidates.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double doc_norm = snapshot.tfidf_doc_norm(candidates[i]);
        if (query_norm == 0.0 || doc_norm == 0.0) continue;
        scores[i] = dots[i] / (query_norm * doc_norm);
    }
    return scores;
}

void min_max_normalize(std::vector<double>& column) {
    if (column.empty()) return;
    auto [min_it, max_it] = std::minmax_element(column.begin(), column.end());
    double lo = *min_it;
    double hi = *max_it;
    if (lo == hi) {
        std::fill(column.begin(), column.end(), 0.0);  // constant column
        return;
    }
    for (double& v : column) v = (v - lo) / (hi - lo);
}

std::vector<double> score_candidates(const IndexSnapshot& snapshot,
                                     std::span<const Term> query_terms,
                                     const std::vector<doc_id_t>& candidates,
                                     const ScorerConfig& scorer) {
    const std::vector<Term> distinct = sorted_distinct(query_terms);
    switch (scorer.kind) {
        case ScorerKind::bm25:
            scorer.bm25.validate();
            return bm25_column(snapshot, distinct, candidates, scorer.bm25);
        case ScorerKind::tfidf_cosine:
            return cosine_column(snapshot, query_terms, candidates);
        case ScorerKind::baseline:
            return std::vector<double>(candidates.size(), 0.0);
        case ScorerKind::composite: {
            scorer.bm25.validate();
            scorer.composite.validate();
            // Both constituent metrics are computed over the same candidate
            // set, which is what makes min-max normalization well-defined.
            std::vector<double> cosine = cosine_column(snapshot, query_terms, candidates);
            std::vector<double> bm25 = bm25_column(snapshot, distinct, candidates, scorer.bm25);
            if (scorer.composite.normalize_metrics) {
                min_max_normalize(cosine);
                min_max_normalize(bm25);
            }
            std::vector<double> scores(candidates.size(), 0.0);
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                std::pair<MetricId, double> values[] = {
                    {MetricId::cosine_tfidf, cosine[i]},
                    {MetricId::bm25, bm25[i]},
                };
                scores[i] = composite_score(values, scorer.composite);
            }
            return scores;
        }
    }
    throw DomainError("unknown scorer kind");
}

}  // namespace

std::string_view scorer_name(ScorerKind kind) {
    switch (kind) {
        case ScorerKind::tfidf_cosine: return "tfidf";
        case ScorerKind::bm25: return "bm25";
        case ScorerKind::composite: return "composite";
        case ScorerKind::baseline: return "baseline";
    }
    return "?";
}

ScorerKind scorer_kind_from_name(std::string_view name) {
    if (name == "tfidf" || name == "tfidf_cosine" || name == "cosine") {
        return ScorerKind::tfidf_cosine;
    }
    if (name == "bm25") return ScorerKind::bm25;
    if (name == "composite") return ScorerKind::composite;
    if (name == "baseline") return ScorerKind::baseline;
    throw DomainError("unknown scorer: " + std::string(name));
}

std::vector<doc_id_t> candidates(const IndexSnapshot& snapshot, std::span<const Term> terms) {
    std::vector<doc_id_t> ids;
    for (const Term& term : sorted_distinct(terms)) {
        const PostingsList* postings = snapshot.postings_for(term);
        if (postings == nullptr) continue;
        for (const Posting& posting : *postings) ids.push_back(posting.doc_id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

RankedList top_k(std::vector<ScoredHit> scored, std::size_t k) {
    if (k == 0) throw DomainError("k must be >= 1");
    auto better = [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    };
    if (scored.size() > k) {
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                          scored.end(), better);
        scored.resize(k);
    } else {
        std::sort(scored.begin(), scored.end(), better);
    }
    return RankedList{std::move(scored), k};
}

RankedList search(const IndexSnapshot& snapshot, std::string_view raw_query,
                  const ScorerConfig& scorer, std::size_t k) {
    if (k == 0) throw DomainError("k must be >= 1");
    std::vector<Term> terms = analyze(raw_query, snapshot.analyzer());
    if (terms.empty()) {
        throw EmptyQuery("query has no searchable terms: " + std::string(raw_query));
    }

    std::vector<doc_id_t> ids = candidates(snapshot, terms);
    std::vector<double> scores = score_candidates(snapshot, terms, ids, scorer);

    std::vector<ScoredHit> hits;
    hits.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        hits.push_back(ScoredHit{ids[i], snapshot.doc(ids[i]).external_id, scores[i]});
    }
    return top_k(std::move(hits), k);
}

}  // namespace ragsearch
