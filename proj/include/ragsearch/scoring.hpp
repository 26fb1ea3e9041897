#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ragsearch/index.hpp"

namespace ragsearch {

enum class MetricId { cosine_tfidf, bm25 };

const char* metric_name(MetricId id);

enum class IdfVariant {
    raw_log,   // ln(N/df); df=0 contributes nothing
    smoothed,  // ln(1 + (N-df+0.5)/(df+0.5)), the usual probabilistic form
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    IdfVariant idf_variant = IdfVariant::raw_log;

    // Throws DomainError unless k1 >= 0 and b in [0,1].
    void validate() const;
};

struct CompositeWeights {
    std::vector<std::pair<MetricId, double>> weights = {
        {MetricId::cosine_tfidf, 0.5},
        {MetricId::bm25, 0.5},
    };
    // Min-max rescale each metric over the candidate set before weighting.
    // On by default: BM25 is unbounded and would otherwise swamp cosine.
    bool normalize_metrics = true;

    // Throws DomainError unless all weights are >= 0 and at least one is > 0.
    void validate() const;
};

// Sparse term-weight vector; zero weights are never stored. Entries are kept
// in term order so every accumulation below is reproducible bit for bit.
class SparseVector {
public:
    SparseVector() = default;

    void set(Term term, double weight);  // ignores weight == 0
    double get(const Term& term) const;  // 0 when absent
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<Term, double>& entries() const { return entries_; }

    double norm() const;
    static double dot(const SparseVector& a, const SparseVector& b);

private:
    std::map<Term, double> entries_;
};

// ln(n_docs/df); 0 when df == 0 (out-of-corpus terms contribute nothing).
// Throws DomainError when df > n_docs.
double idf(std::size_t n_docs, std::size_t df);

// Query-side IDF under the configured variant; used by the BM25 sum.
double bm25_idf(std::size_t n_docs, std::size_t df, IdfVariant variant);

double tfidf_weight(std::uint32_t tf, double idf);

// TF-IDF vector for the given term frequencies over the snapshot's corpus
// statistics; terms whose weight is zero (df == 0 or df == N) are omitted.
SparseVector tfidf_vector(const IndexSnapshot& snapshot,
                          const std::map<Term, std::uint32_t>& term_frequencies);

// Convenience: the full TF-IDF vector of an indexed document.
SparseVector tfidf_document_vector(const IndexSnapshot& snapshot, doc_id_t id);

// dot(a,b) / (|a||b|); 0 when either norm is zero.
double cosine_similarity(const SparseVector& a, const SparseVector& b);

// K = k1 * ((1-b) + b * doc_len/avgdl). Throws DomainError when avgdl <= 0.
double bm25_length_norm(const Bm25Params& params, std::uint32_t doc_len, double avgdl);

// Shared saturation kernel: idf * ((k1+1) f) / (K + f), 0 when f == 0.
// Both the per-document scorer and the index traversal path go through this
// so the two produce identical bits.
inline double bm25_term_contribution(double idf, std::uint32_t f, double k, double k1) {
    if (f == 0) return 0.0;
    double fd = static_cast<double>(f);
    return idf * (((k1 + 1.0) * fd) / (k + fd));
}

// Sum over the distinct query terms of the saturated, length-normalized and
// IDF-weighted term frequency. Duplicate query terms are collapsed. Throws
// UnknownDocument when doc_id is not in the snapshot.
double bm25_score(const IndexSnapshot& snapshot, std::span<const Term> query_terms,
                  doc_id_t doc_id, const Bm25Params& params);

// Weighted sum of the configured metrics. Values are assumed to be already
// normalized when the caller requested normalization. Throws MissingMetric
// when a weighted metric has no value.
double composite_score(std::span<const std::pair<MetricId, double>> metric_values,
                       const CompositeWeights& weights);

// Counts multiplicities; the query-side TF map.
std::map<Term, std::uint32_t> term_frequencies(std::span<const Term> terms);

}  // namespace ragsearch
