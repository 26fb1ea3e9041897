#include "ragsearch/index.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ragsearch/errors.hpp"
#include "ragsearch/scoring.hpp"

namespace ragsearch {

IndexSnapshot::IndexSnapshot(detail::SnapshotData&& data)
    : analyzer_(std::move(data.analyzer)),
      titles_indexed_(data.titles_indexed),
      docs_(std::move(data.docs)),
      postings_(std::move(data.postings)) {
    by_external_id_.reserve(docs_.size());
    stats_.n_docs = docs_.size();
    for (const StoredDocument& doc : docs_) {
        by_external_id_.emplace(doc.external_id, doc.doc_id);
        stats_.total_tokens += doc.length_tokens;
    }
    stats_.avgdl = docs_.empty() ? 0.0
                                 : static_cast<double>(stats_.total_tokens) /
                                       static_cast<double>(docs_.size());

    // Document TF-IDF norms, accumulated term by term in term order so the
    // result matches SparseVector::norm() of the full document vector.
    tfidf_norms_.assign(docs_.size(), 0.0);
    for (const auto& [term, postings] : postings_) {
        double term_idf = idf(stats_.n_docs, postings.size());
        if (term_idf == 0.0) continue;
        for (const Posting& posting : postings) {
            double w = tfidf_weight(posting.term_frequency, term_idf);
            tfidf_norms_[posting.doc_id] += w * w;
        }
    }
    for (double& n : tfidf_norms_) n = std::sqrt(n);
}

const StoredDocument& IndexSnapshot::doc(doc_id_t id) const {
    if (id >= docs_.size()) {
        throw UnknownDocument("no document with id " + std::to_string(id));
    }
    return docs_[id];
}

const StoredDocument* IndexSnapshot::find_external(std::string_view external_id) const {
    auto it = by_external_id_.find(std::string(external_id));
    return it == by_external_id_.end() ? nullptr : &docs_[it->second];
}

const PostingsList* IndexSnapshot::postings_for(const Term& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

std::size_t IndexSnapshot::document_frequency(const Term& term) const {
    const PostingsList* list = postings_for(term);
    return list == nullptr ? 0 : list->size();
}

std::uint32_t IndexSnapshot::term_frequency(const Term& term, doc_id_t id) const {
    const PostingsList* list = postings_for(term);
    if (list == nullptr) return 0;
    auto it = std::lower_bound(list->begin(), list->end(), id,
                               [](const Posting& p, doc_id_t d) { return p.doc_id < d; });
    if (it != list->end() && it->doc_id == id) return it->term_frequency;
    return 0;
}

double IndexSnapshot::tfidf_doc_norm(doc_id_t id) const {
    if (id >= tfidf_norms_.size()) {
        throw UnknownDocument("no document with id " + std::to_string(id));
    }
    return tfidf_norms_[id];
}

IndexBuilder::IndexBuilder(AnalyzerConfig config, bool index_titles) {
    data_.analyzer = std::move(config);
    data_.titles_indexed = index_titles;
}

void IndexBuilder::require_open() const {
    if (committed_) throw DomainError("index builder already committed");
}

doc_id_t IndexBuilder::add_document(std::string external_id, std::string title,
                                    std::string body) {
    require_open();
    if (seen_external_ids_.count(external_id) > 0) {
        throw DuplicateExternalId("external id added twice: " + external_id);
    }
    auto id = static_cast<doc_id_t>(data_.docs.size());

    std::vector<Term> terms = analyze(body, data_.analyzer);
    if (data_.titles_indexed) {
        std::vector<Term> title_terms = analyze(title, data_.analyzer);
        terms.insert(terms.end(), std::make_move_iterator(title_terms.begin()),
                     std::make_move_iterator(title_terms.end()));
    }

    std::map<Term, std::uint32_t> counts;
    for (const Term& term : terms) ++counts[term];
    for (auto& [term, tf] : counts) {
        data_.postings[term].push_back(Posting{id, tf});
    }

    StoredDocument doc;
    doc.doc_id = id;
    doc.external_id = external_id;
    doc.title = std::move(title);
    doc.body = std::move(body);
    doc.length_tokens = static_cast<std::uint32_t>(terms.size());
    data_.docs.push_back(std::move(doc));
    seen_external_ids_.emplace(std::move(external_id), id);
    return id;
}

IndexSnapshot IndexBuilder::commit() {
    require_open();
    committed_ = true;
    // Postings are appended in ascending doc_id order, so each list is
    // already sorted; the snapshot constructor derives the corpus stats.
    return IndexSnapshot(std::move(data_));
}

}  // namespace ragsearch
