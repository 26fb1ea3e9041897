#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ragsearch/errors.hpp"
#include "ragsearch/index.hpp"
#include "ragsearch/scoring.hpp"

using namespace ragsearch;

namespace {

AnalyzerConfig no_stopwords() {
    AnalyzerConfig config;
    config.stopwords.clear();
    return config;
}

IndexSnapshot tiny_corpus() {
    IndexBuilder builder(no_stopwords());
    builder.add_document("a#0", "A", "cat sat on the mat");
    builder.add_document("a#1", "A", "dog ran after the cat cat");
    builder.add_document("b#0", "B", "birds fly");
    return builder.commit();
}

}  // namespace

TEST_CASE("builder assigns dense ids in insertion order") {
    IndexSnapshot snapshot = tiny_corpus();
    REQUIRE(snapshot.n_docs() == 3);
    CHECK(snapshot.doc(0).external_id == "a#0");
    CHECK(snapshot.doc(1).external_id == "a#1");
    CHECK(snapshot.doc(2).external_id == "b#0");
    CHECK(snapshot.doc(1).title == "A");
    CHECK(snapshot.doc(2).body == "birds fly");
    CHECK(snapshot.contains(2));
    CHECK_FALSE(snapshot.contains(3));
    CHECK_THROWS_AS(snapshot.doc(3), UnknownDocument);
}

TEST_CASE("external id lookup and duplicate rejection") {
    IndexSnapshot snapshot = tiny_corpus();
    const StoredDocument* doc = snapshot.find_external("a#1");
    REQUIRE(doc != nullptr);
    CHECK(doc->doc_id == 1);
    CHECK(snapshot.find_external("nope#9") == nullptr);

    IndexBuilder builder(no_stopwords());
    builder.add_document("x#0", "X", "one");
    CHECK_THROWS_AS(builder.add_document("x#0", "X", "two"), DuplicateExternalId);
}

TEST_CASE("postings carry per-document term frequencies sorted by doc id") {
    IndexSnapshot snapshot = tiny_corpus();
    const PostingsList* cat = snapshot.postings_for("cat");
    REQUIRE(cat != nullptr);
    REQUIRE(cat->size() == 2);
    CHECK((*cat)[0] == Posting{0, 1});
    CHECK((*cat)[1] == Posting{1, 2});  // "cat cat"

    CHECK(snapshot.postings_for("zebra") == nullptr);
    CHECK(snapshot.document_frequency("cat") == 2);
    CHECK(snapshot.document_frequency("birds") == 1);
    CHECK(snapshot.document_frequency("zebra") == 0);
    CHECK(snapshot.term_frequency("cat", 1) == 2);
    CHECK(snapshot.term_frequency("cat", 2) == 0);
}

TEST_CASE("corpus stats count analyzed tokens") {
    IndexSnapshot snapshot = tiny_corpus();
    // 5 + 6 + 2 analyzed tokens (no stopwords dropped in this config)
    CHECK(snapshot.stats().n_docs == 3);
    CHECK(snapshot.stats().total_tokens == 13);
    CHECK(snapshot.avgdl() == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
    CHECK(snapshot.doc(0).length_tokens == 5);
    CHECK(snapshot.doc(1).length_tokens == 6);
    CHECK(snapshot.doc(2).length_tokens == 2);
}

TEST_CASE("stopwords shrink document length") {
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("d#0", "D", "the cat is on the mat");
    IndexSnapshot snapshot = builder.commit();
    CHECK(snapshot.doc(0).length_tokens == 2);  // cat, mat
    CHECK(snapshot.postings_for("the") == nullptr);
}

TEST_CASE("titles are indexed only when asked") {
    AnalyzerConfig config = no_stopwords();
    {
        IndexBuilder builder(config);
        builder.add_document("d#0", "Solar Panels", "energy output");
        IndexSnapshot snapshot = builder.commit();
        CHECK_FALSE(snapshot.titles_indexed());
        CHECK(snapshot.postings_for("solar") == nullptr);
        CHECK(snapshot.doc(0).length_tokens == 2);
    }
    {
        IndexBuilder builder(config, /*index_titles=*/true);
        builder.add_document("d#0", "Solar Panels", "energy output");
        IndexSnapshot snapshot = builder.commit();
        CHECK(snapshot.titles_indexed());
        REQUIRE(snapshot.postings_for("solar") != nullptr);
        CHECK(snapshot.document_frequency("panels") == 1);
        // title tokens count toward |d| when indexed
        CHECK(snapshot.doc(0).length_tokens == 4);
    }
}

TEST_CASE("commit invalidates the builder") {
    IndexBuilder builder(no_stopwords());
    builder.add_document("d#0", "D", "text");
    (void)builder.commit();
    CHECK_THROWS_AS(builder.add_document("d#1", "D", "more"), DomainError);
    CHECK_THROWS_AS(builder.commit(), DomainError);
}

TEST_CASE("empty corpus commits to an empty snapshot") {
    IndexBuilder builder(no_stopwords());
    IndexSnapshot snapshot = builder.commit();
    CHECK(snapshot.n_docs() == 0);
    CHECK(snapshot.avgdl() == 0.0);
    CHECK(snapshot.postings().empty());
}

TEST_CASE("precomputed tfidf norms equal the document vector norm") {
    IndexSnapshot snapshot = tiny_corpus();
    for (doc_id_t id = 0; id < snapshot.n_docs(); ++id) {
        double expected = tfidf_document_vector(snapshot, id).norm();
        CHECK(snapshot.tfidf_doc_norm(id) == expected);  // bitwise, not approx
    }
}

TEST_CASE("documents with only stopwords index as empty but stay retrievable") {
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("d#0", "D", "the of and");
    builder.add_document("d#1", "D", "substance here");
    IndexSnapshot snapshot = builder.commit();
    CHECK(snapshot.doc(0).length_tokens == 0);
    CHECK(snapshot.tfidf_doc_norm(0) == 0.0);
    CHECK(snapshot.n_docs() == 2);
}
