#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ragsearch/analysis.hpp"

namespace ragsearch {

using doc_id_t = std::uint32_t;

struct StoredDocument {
    doc_id_t doc_id = 0;
    std::string external_id;
    std::string title;
    std::string body;
    std::uint32_t length_tokens = 0;  // analyzed term count (|d|)
};

struct Posting {
    doc_id_t doc_id = 0;
    std::uint32_t term_frequency = 0;  // always >= 1

    friend bool operator==(const Posting&, const Posting&) = default;
};

// Sorted by doc_id ascending, no duplicates; size() is the term's df.
using PostingsList = std::vector<Posting>;

struct CorpusStats {
    std::size_t n_docs = 0;
    std::uint64_t total_tokens = 0;
    double avgdl = 0.0;
};

namespace detail {
// Raw state handed to IndexSnapshot by the builder and the loader.
struct SnapshotData {
    AnalyzerConfig analyzer;
    bool titles_indexed = false;
    std::vector<StoredDocument> docs;
    std::map<Term, PostingsList> postings;
};
}  // namespace detail

// Immutable committed index. Freely shareable across threads; all scoring
// state (corpus stats, per-document TF-IDF norms) is derived once here.
class IndexSnapshot {
public:
    explicit IndexSnapshot(detail::SnapshotData&& data);

    const AnalyzerConfig& analyzer() const { return analyzer_; }
    bool titles_indexed() const { return titles_indexed_; }

    std::size_t n_docs() const { return docs_.size(); }
    const CorpusStats& stats() const { return stats_; }
    double avgdl() const { return stats_.avgdl; }

    bool contains(doc_id_t id) const { return id < docs_.size(); }
    const StoredDocument& doc(doc_id_t id) const;           // throws UnknownDocument
    const StoredDocument* find_external(std::string_view external_id) const;

    const std::map<Term, PostingsList>& postings() const { return postings_; }
    const PostingsList* postings_for(const Term& term) const;
    std::size_t document_frequency(const Term& term) const;
    // 0 when the term does not occur in the document.
    std::uint32_t term_frequency(const Term& term, doc_id_t id) const;

    // Euclidean norm of the document's full TF-IDF vector, precomputed.
    double tfidf_doc_norm(doc_id_t id) const;

private:
    AnalyzerConfig analyzer_;
    bool titles_indexed_ = false;
    std::vector<StoredDocument> docs_;
    std::map<Term, PostingsList> postings_;
    std::unordered_map<std::string, doc_id_t> by_external_id_;
    CorpusStats stats_;
    std::vector<double> tfidf_norms_;
};

// Single-writer accumulation stage; commit() freezes it into a snapshot and
// invalidates the builder.
class IndexBuilder {
public:
    explicit IndexBuilder(AnalyzerConfig config, bool index_titles = false);

    // Analyzes the document and accumulates per-term frequencies. Ids are
    // dense ordinals in insertion order. Throws DuplicateExternalId.
    doc_id_t add_document(std::string external_id, std::string title, std::string body);

    std::size_t n_docs() const { return data_.docs.size(); }

    IndexSnapshot commit();

private:
    void require_open() const;

    detail::SnapshotData data_;
    std::unordered_map<std::string, doc_id_t> seen_external_ids_;
    bool committed_ = false;
};

// Single-file index persistence; see FORMAT.md. load() of a persisted
// snapshot reproduces every observable, including exact scoring output.
void persist(const IndexSnapshot& snapshot, const std::string& path);
IndexSnapshot load_index(const std::string& path);

}  // namespace ragsearch
