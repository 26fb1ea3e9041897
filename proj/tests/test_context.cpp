#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "ragsearch/context.hpp"
#include "ragsearch/errors.hpp"
#include "ragsearch/index.hpp"
#include "ragsearch/retrieval.hpp"

using namespace ragsearch;

namespace {

std::string words(const std::string& w, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += w;
    }
    return out;
}

// Three docs with analyzed sizes 32 / 52 / 72, i.e. costs 40 / 60 / 80 once
// the fixed per-passage overhead is added.
IndexSnapshot three_doc_snapshot() {
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("d#0", "Alpha", words("oak", 32));
    builder.add_document("d#1", "Beta", words("elm", 52));
    builder.add_document("d#2", "Gamma", words("fir", 72));
    return builder.commit();
}

RankedList hits_for(const IndexSnapshot& snapshot, std::initializer_list<doc_id_t> ids) {
    RankedList list;
    double score = 1.0;
    for (doc_id_t id : ids) {
        list.hits.push_back({id, snapshot.doc(id).external_id, score});
        score /= 2.0;
    }
    list.top_k_count = list.hits.size();
    return list;
}

}  // namespace

TEST_CASE("assembly packs whole passages in rank order until one does not fit") {
    IndexSnapshot snapshot = three_doc_snapshot();
    RankedList hits = hits_for(snapshot, {0, 1, 2});

    ContextBundle bundle = assemble_context("test", hits, snapshot, 120);
    REQUIRE(bundle.passages.size() == 2);  // 40 + 60 fit, 80 exceeds the 20 left
    CHECK(bundle.passages[0].external_id == "d#0");
    CHECK(bundle.passages[1].external_id == "d#1");
    CHECK(bundle.tokens_used == 100);
    CHECK(bundle.token_budget == 120);
    CHECK(bundle.query == "test");
    CHECK(bundle.passages[0].score == 1.0);
    CHECK(bundle.passages[1].score == 0.5);
}

TEST_CASE("rendered block uses the documented per-passage layout") {
    IndexSnapshot snapshot = three_doc_snapshot();
    RankedList hits = hits_for(snapshot, {1, 0});

    ContextBundle bundle = assemble_context("q", hits, snapshot, 1000);
    std::string expected = "[1] Beta\n" + words("elm", 52) + "\n\n" +
                           "[2] Alpha\n" + words("oak", 32) + "\n\n";
    CHECK(bundle.rendered == expected);
    CHECK(bundle.tokens_used == 100);
}

TEST_CASE("budget smaller than the first passage yields an empty bundle") {
    IndexSnapshot snapshot = three_doc_snapshot();
    RankedList hits = hits_for(snapshot, {0, 1, 2});

    ContextBundle bundle = assemble_context("q", hits, snapshot, 39);
    CHECK(bundle.passages.empty());
    CHECK(bundle.rendered.empty());
    CHECK(bundle.tokens_used == 0);

    // exact fit is still a fit
    ContextBundle exact = assemble_context("q", hits, snapshot, 40);
    REQUIRE(exact.passages.size() == 1);
    CHECK(exact.tokens_used == 40);
}

TEST_CASE("zero budget is rejected") {
    IndexSnapshot snapshot = three_doc_snapshot();
    RankedList hits = hits_for(snapshot, {0});
    CHECK_THROWS_AS(assemble_context("q", hits, snapshot, 0), DomainError);
}

TEST_CASE("empty hit list produces an empty bundle") {
    IndexSnapshot snapshot = three_doc_snapshot();
    ContextBundle bundle = assemble_context("q", RankedList{}, snapshot, 100);
    CHECK(bundle.passages.empty());
    CHECK(bundle.rendered.empty());
    CHECK(bundle.tokens_used == 0);
}

TEST_CASE("assembly stops at the first non-fit instead of skipping ahead") {
    // costs 40, 80, 40; with budget 100 a skip-ahead packer would grab the
    // third passage, but stopping keeps the block a rank prefix.
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("d#0", "A", words("oak", 32));
    builder.add_document("d#1", "B", words("elm", 72));
    builder.add_document("d#2", "C", words("fir", 32));
    IndexSnapshot snapshot = builder.commit();
    RankedList hits = hits_for(snapshot, {0, 1, 2});

    ContextBundle bundle = assemble_context("q", hits, snapshot, 100);
    REQUIRE(bundle.passages.size() == 1);
    CHECK(bundle.passages[0].external_id == "d#0");
    CHECK(bundle.tokens_used == 40);
}

TEST_CASE("growing the budget only ever appends passages") {
    IndexSnapshot snapshot = three_doc_snapshot();
    RankedList hits = hits_for(snapshot, {0, 1, 2});

    ContextBundle prev = assemble_context("q", hits, snapshot, 1);
    for (std::size_t budget = 2; budget <= 200; ++budget) {
        ContextBundle cur = assemble_context("q", hits, snapshot, budget);
        REQUIRE(cur.passages.size() >= prev.passages.size());
        for (std::size_t i = 0; i < prev.passages.size(); ++i)
            CHECK(cur.passages[i].external_id == prev.passages[i].external_id);
        CHECK(cur.rendered.substr(0, prev.rendered.size()) == prev.rendered);
        prev = std::move(cur);
    }
    CHECK(prev.passages.size() == 3);  // 200 >= 40+60+80
    CHECK(prev.tokens_used == 180);
}

TEST_CASE("assembly composes with live search results") {
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("w#0", "Weather", "rain falls on the plain");
    builder.add_document("w#1", "Geology", "granite under the plain");
    builder.add_document("w#2", "Cooking", "slice onions finely");
    IndexSnapshot snapshot = builder.commit();

    RankedList hits = search(snapshot, "rain plain", ScorerConfig{}, 5);
    REQUIRE(!hits.hits.empty());
    ContextBundle bundle = assemble_context("rain plain", hits, snapshot, 512);
    REQUIRE(bundle.passages.size() == hits.hits.size());
    for (std::size_t i = 0; i < hits.hits.size(); ++i) {
        CHECK(bundle.passages[i].external_id == hits.hits[i].external_id);
        CHECK(bundle.passages[i].score == hits.hits[i].score);
    }
    CHECK(bundle.passages[0].external_id == "w#0");
}
