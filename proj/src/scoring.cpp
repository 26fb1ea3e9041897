#include "ragsearch/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "ragsearch/errors.hpp"

namespace ragsearch {

const char* metric_name(MetricId id) {
    switch (id) {
        case MetricId::cosine_tfidf: return "cosine_tfidf";
        case MetricId::bm25: return "bm25";
    }
    return "?";
}

void Bm25Params::validate() const {
    if (!(k1 >= 0.0)) throw DomainError("bm25 k1 must be >= 0");
    if (!(b >= 0.0 && b <= 1.0)) throw DomainError("bm25 b must be in [0,1]");
}

void CompositeWeights::validate() const {
    bool any_positive = false;
    for (const auto& [metric, weight] : weights) {
        if (!(weight >= 0.0)) throw DomainError("composite weights must be >= 0");
        if (weight > 0.0) any_positive = true;
    }
    if (!any_positive) throw DomainError("at least one composite weight must be > 0");
}

void SparseVector::set(Term term, double weight) {
    if (weight == 0.0) return;
    entries_.insert_or_assign(std::move(term), weight);
}

double SparseVector::get(const Term& term) const {
    auto it = entries_.find(term);
    return it == entries_.end() ? 0.0 : it->second;
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [term, weight] : entries_) sum += weight * weight;
    return std::sqrt(sum);
}

double SparseVector::dot(const SparseVector& a, const SparseVector& b) {
    // Merge join in term order: the accumulation sequence is identical no
    // matter which operand comes first, so dot(a,b) == dot(b,a) exactly.
    double sum = 0.0;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() && ib != b.entries_.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            sum += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

double idf(std::size_t n_docs, std::size_t df) {
    if (df > n_docs) throw DomainError("df exceeds corpus size");
    if (df == 0) return 0.0;
    return std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

double bm25_idf(std::size_t n_docs, std::size_t df, IdfVariant variant) {
    if (variant == IdfVariant::smoothed) {
        if (df > n_docs) throw DomainError("df exceeds corpus size");
        double n = static_cast<double>(n_docs);
        double d = static_cast<double>(df);
        return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
    }
    return idf(n_docs, df);
}

double tfidf_weight(std::uint32_t tf, double idf) {
    return static_cast<double>(tf) * idf;
}

SparseVector tfidf_vector(const IndexSnapshot& snapshot,
                          const std::map<Term, std::uint32_t>& term_frequencies) {
    SparseVector vector;
    for (const auto& [term, tf] : term_frequencies) {
        double term_idf = idf(snapshot.n_docs(), snapshot.document_frequency(term));
        vector.set(term, tfidf_weight(tf, term_idf));
    }
    return vector;
}

SparseVector tfidf_document_vector(const IndexSnapshot& snapshot, doc_id_t id) {
    if (!snapshot.contains(id)) {
        throw UnknownDocument("no document with id " + std::to_string(id));
    }
    SparseVector vector;
    for (const auto& [term, postings] : snapshot.postings()) {
        auto it = std::lower_bound(postings.begin(), postings.end(), id,
                                   [](const Posting& p, doc_id_t d) { return p.doc_id < d; });
        if (it != postings.end() && it->doc_id == id) {
            double term_idf = idf(snapshot.n_docs(), postings.size());
            vector.set(term, tfidf_weight(it->term_frequency, term_idf));
        }
    }
    return vector;
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return SparseVector::dot(a, b) / (na * nb);
}

double bm25_length_norm(const Bm25Params& params, std::uint32_t doc_len, double avgdl) {
    if (!(avgdl > 0.0)) throw DomainError("avgdl must be positive");
    return params.k1 *
           ((1.0 - params.b) + params.b * (static_cast<double>(doc_len) / avgdl));
}

double bm25_score(const IndexSnapshot& snapshot, std::span<const Term> query_terms,
                  doc_id_t doc_id, const Bm25Params& params) {
    const StoredDocument& doc = snapshot.doc(doc_id);

    std::vector<Term> distinct(query_terms.begin(), query_terms.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    double score = 0.0;
    for (const Term& term : distinct) {
        std::uint32_t f = snapshot.term_frequency(term, doc_id);
        if (f == 0) continue;  // absent terms contribute 0
        double term_idf =
            bm25_idf(snapshot.n_docs(), snapshot.document_frequency(term), params.idf_variant);
        if (term_idf == 0.0) continue;
        // f >= 1 implies the corpus has tokens, so avgdl > 0 here.
        double k = bm25_length_norm(params, doc.length_tokens, snapshot.avgdl());
        score += bm25_term_contribution(term_idf, f, k, params.k1);
    }
    return score;
}

double composite_score(std::span<const std::pair<MetricId, double>> metric_values,
                       const CompositeWeights& weights) {
    double score = 0.0;
    for (const auto& [metric, weight] : weights.weights) {
        auto it = std::find_if(metric_values.begin(), metric_values.end(),
                               [metric](const auto& mv) { return mv.first == metric; });
        if (it == metric_values.end()) {
            throw MissingMetric(std::string("no value for metric ") + metric_name(metric));
        }
        score += weight * it->second;
    }
    return score;
}

std::map<Term, std::uint32_t> term_frequencies(std::span<const Term> terms) {
    std::map<Term, std::uint32_t> counts;
    for (const Term& term : terms) ++counts[term];
    return counts;
}

}  // namespace ragsearch
