#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "ragsearch/context.hpp"
#include "ragsearch/index.hpp"
#include "ragsearch/retrieval.hpp"
#include "ragsearch/service.hpp"

using namespace ragsearch;
using nlohmann::json;

namespace {

IndexSnapshot fruit_snapshot() {
    IndexBuilder builder(AnalyzerConfig::standard());
    builder.add_document("f#0", "Apples", "apple orchards need cold winters");
    builder.add_document("f#1", "Pears", "pear trees tolerate mild winters");
    builder.add_document("f#2", "Cherries", "cherry blossoms signal spring");
    builder.add_document("f#3", "Storage", "apple and pear storage requires cool cellars");
    return builder.commit();
}

// Serves a SearchService on an ephemeral loopback port for the lifetime of
// the fixture.
struct LiveServer {
    SearchService service;
    httplib::Server server;
    int port = 0;
    std::thread runner;

    explicit LiveServer(ServiceConfig config = {})
        : service(fruit_snapshot(), std::move(config)) {
        service.register_routes(server);
        port = server.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        runner = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~LiveServer() {
        server.stop();
        runner.join();
    }

    httplib::Client client() { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST_CASE("healthz reports document count") {
    LiveServer live;
    auto res = live.client().Get("/healthz");
    REQUIRE(res);
    CHECK(res->status == 200);
    json body = json::parse(res->body);
    CHECK(body["status"] == "ok");
    CHECK(body["n_docs"] == 4);
}

TEST_CASE("search endpoint returns the same hits as the library call") {
    LiveServer live;
    auto res = live.client().Get("/search?q=apple%20winters&k=3");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    json body = json::parse(res->body);
    CHECK(body["query"] == "apple winters");
    CHECK(body["scorer"] == "bm25");
    CHECK(body["k"] == 3);

    RankedList expected = search(live.service.snapshot(), "apple winters", ScorerConfig{}, 3);
    // serializer shared with the CLI, so the JSON must match byte for byte
    CHECK(body["hits"].dump() == hits_json(expected, live.service.snapshot()).dump());
    REQUIRE(!body["hits"].empty());
    CHECK(body["hits"][0]["external_id"] == "f#0");
    CHECK(body["hits"][0].size() == 3);  // external_id, title, score
}

TEST_CASE("search honors scorer and k parameters") {
    LiveServer live;
    auto res = live.client().Get("/search?q=apple&scorer=tfidf&k=1");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    json body = json::parse(res->body);
    CHECK(body["scorer"] == "tfidf");
    CHECK(body["hits"].size() == 1);

    auto composite = live.client().Get("/search?q=apple&scorer=composite");
    REQUIRE(composite);
    CHECK(composite->status == 200);
    CHECK(json::parse(composite->body)["scorer"] == "composite");
}

TEST_CASE("search rejects bad input with the documented error body") {
    LiveServer live;

    SUBCASE("missing q") {
        auto res = live.client().Get("/search");
        REQUIRE(res);
        CHECK(res->status == 400);
        json body = json::parse(res->body);
        CHECK(body["error"]["code"] == "invalid_argument");
        CHECK(body["error"].contains("message"));
    }
    SUBCASE("empty query after analysis") {
        auto res = live.client().Get("/search?q=the%20and%20of");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "empty_query");
    }
    SUBCASE("blank query") {
        auto res = live.client().Get("/search?q=");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "empty_query");
    }
    SUBCASE("non-numeric k") {
        auto res = live.client().Get("/search?q=apple&k=abc");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "invalid_argument");
    }
    SUBCASE("zero k") {
        auto res = live.client().Get("/search?q=apple&k=0");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "invalid_argument");
    }
    SUBCASE("unknown scorer") {
        auto res = live.client().Get("/search?q=apple&scorer=pagerank");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "invalid_argument");
    }
}

TEST_CASE("context endpoint assembles the same bundle as the library call") {
    LiveServer live;
    json request = {{"query", "apple winters"}, {"k", 3}, {"token_budget", 64}};
    auto res = live.client().Post("/context", request.dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);

    RankedList hits = search(live.service.snapshot(), "apple winters", ScorerConfig{}, 3);
    ContextBundle bundle = assemble_context("apple winters", hits, live.service.snapshot(), 64);
    CHECK(res->body == context_json(bundle).dump());

    json body = json::parse(res->body);
    CHECK(body["token_budget"] == 64);
    CHECK(body["tokens_used"].get<std::size_t>() <= 64);
    REQUIRE(!body["passages"].empty());
    CHECK(body["passages"][0]["external_id"] == "f#0");
    CHECK(body["rendered"].get<std::string>().find("[1] Apples\n") == 0);
}

TEST_CASE("context endpoint validates its body") {
    LiveServer live;

    auto expect_400 = [&](const std::string& payload, const std::string& code) {
        auto res = live.client().Post("/context", payload, "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == code);
    };

    expect_400("this is not json", "invalid_argument");
    expect_400("[1,2]", "invalid_argument");
    expect_400(R"({"k": 3})", "invalid_argument");               // no query
    expect_400(R"({"query": 7})", "invalid_argument");           // wrong type
    expect_400(R"({"query": "apple", "k": -2})", "invalid_argument");
    expect_400(R"({"query": "apple", "k": 0})", "invalid_argument");
    expect_400(R"({"query": "apple", "token_budget": 0})", "invalid_argument");
    expect_400(R"({"query": "the"})", "empty_query");
}

TEST_CASE("unknown routes get a json 404") {
    LiveServer live;
    auto res = live.client().Get("/nope");
    REQUIRE(res);
    CHECK(res->status == 404);
    json body = json::parse(res->body);
    CHECK(body["error"]["code"] == "not_found");
}

TEST_CASE("service defaults come from the config") {
    ServiceConfig config;
    config.default_k = 2;
    config.default_scorer = ScorerKind::tfidf_cosine;
    LiveServer live(config);

    auto res = live.client().Get("/search?q=winters");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    json body = json::parse(res->body);
    CHECK(body["k"] == 2);
    CHECK(body["scorer"] == "tfidf");
    CHECK(body["hits"].size() <= 2);
}

TEST_CASE("concurrent identical requests get identical bodies") {
    LiveServer live;
    auto reference = live.client().Get("/search?q=apple%20pear&k=4");
    REQUIRE(reference);
    REQUIRE(reference->status == 200);
    std::string expected = reference->body;

    constexpr int kThreads = 8;
    std::vector<std::string> bodies(kThreads);
    std::vector<std::thread> workers;
    workers.reserve(kThreads);
    for (int i = 0; i < kThreads; ++i) {
        workers.emplace_back([&, i] {
            httplib::Client client("127.0.0.1", live.port);
            if (auto res = client.Get("/search?q=apple%20pear&k=4"); res && res->status == 200)
                bodies[i] = res->body;
        });
    }
    for (std::thread& w : workers) w.join();
    for (const std::string& body : bodies) CHECK(body == expected);
}

TEST_CASE("serializer shapes are stable") {
    json err = error_json("invalid_argument", "k must be a positive integer");
    CHECK(err.dump() ==
          R"({"error":{"code":"invalid_argument","message":"k must be a positive integer"}})");

    IndexSnapshot snapshot = fruit_snapshot();
    RankedList empty;
    CHECK(hits_json(empty, snapshot).dump() == "[]");

    ContextBundle bundle;
    bundle.query = "q";
    bundle.token_budget = 10;
    json ctx = context_json(bundle);
    CHECK(ctx["passages"].is_array());
    CHECK(ctx["passages"].empty());
    CHECK(ctx["rendered"] == "");
    CHECK(ctx["tokens_used"] == 0);
}
