#include "ragsearch/service.hpp"

#include <charconv>
#include <csignal>
#include <utility>

#include "httplib.h"

#include "ragsearch/errors.hpp"
#include "ragsearch/log.hpp"

namespace ragsearch {
namespace {

using nlohmann::json;

void write_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void write_error(httplib::Response& res, int status, const std::string& code,
                 const std::string& message) {
    write_json(res, status, error_json(code, message));
}

// Maps domain errors onto the HTTP error contract.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const EmptyQuery& e) {
        write_error(res, 400, "empty_query", e.what());
    } catch (const DomainError& e) {
        write_error(res, 400, "invalid_argument", e.what());
    } catch (const Error& e) {
        write_error(res, 500, "internal", e.what());
    } catch (const std::exception& e) {
        write_error(res, 500, "internal", e.what());
    }
}

std::size_t parse_positive(const std::string& text, const char* name) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
        throw DomainError(std::string(name) + " must be a positive integer");
    return value;
}

std::pair<std::string, int> split_bind_address(const std::string& bind) {
    auto colon = bind.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == bind.size())
        throw IoError("bind address must be host:port, got \"" + bind + "\"");
    std::string host = bind.substr(0, colon);
    int port = static_cast<int>(parse_positive(bind.substr(colon + 1), "port"));
    if (port > 65535) throw IoError("port out of range in \"" + bind + "\"");
    return {host, port};
}

}  // namespace

json hits_json(const RankedList& hits, const IndexSnapshot& snapshot) {
    json out = json::array();
    for (const ScoredHit& hit : hits.hits) {
        out.push_back({{"external_id", hit.external_id},
                       {"title", snapshot.doc(hit.doc_id).title},
                       {"score", hit.score}});
    }
    return out;
}

json context_json(const ContextBundle& bundle) {
    json passages = json::array();
    for (const ContextPassage& p : bundle.passages) {
        passages.push_back({{"external_id", p.external_id},
                            {"title", p.title},
                            {"body", p.body},
                            {"score", p.score}});
    }
    return json{{"query", bundle.query},
                {"passages", std::move(passages)},
                {"rendered", bundle.rendered},
                {"token_budget", bundle.token_budget},
                {"tokens_used", bundle.tokens_used}};
}

json error_json(const std::string& code, const std::string& message) {
    return json{{"error", {{"code", code}, {"message", message}}}};
}

SearchService::SearchService(IndexSnapshot snapshot, ServiceConfig config)
    : snapshot_(std::move(snapshot)), config_(std::move(config)) {}

void SearchService::register_routes(httplib::Server& server) const {
    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
        write_json(res, 200, json{{"status", "ok"}, {"n_docs", snapshot_.n_docs()}});
    });

    server.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            if (!req.has_param("q")) throw DomainError("missing query parameter \"q\"");
            std::string q = req.get_param_value("q");
            std::size_t k = config_.default_k;
            if (req.has_param("k")) k = parse_positive(req.get_param_value("k"), "k");
            ScorerConfig scorer{config_.default_scorer, config_.bm25, config_.composite};
            if (req.has_param("scorer"))
                scorer.kind = scorer_kind_from_name(req.get_param_value("scorer"));
            RankedList hits = search(snapshot_, q, scorer, k);
            write_json(res, 200,
                       json{{"query", q},
                            {"scorer", scorer_name(scorer.kind)},
                            {"k", k},
                            {"hits", hits_json(hits, snapshot_)}});
        });
    });

    server.Post("/context", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.is_object())
                throw DomainError("request body must be a JSON object");
            auto q = body.find("query");
            if (q == body.end() || !q->is_string())
                throw DomainError("\"query\" must be a string");
            std::size_t k = config_.default_k;
            if (auto it = body.find("k"); it != body.end()) {
                if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
                    throw DomainError("\"k\" must be a positive integer");
                k = it->get<std::size_t>();
            }
            std::size_t budget = 512;
            if (auto it = body.find("token_budget"); it != body.end()) {
                if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
                    throw DomainError("\"token_budget\" must be a positive integer");
                budget = it->get<std::size_t>();
            }
            ScorerConfig scorer{config_.default_scorer, config_.bm25, config_.composite};
            RankedList hits = search(snapshot_, q->get<std::string>(), scorer, k);
            ContextBundle bundle = assemble_context(q->get<std::string>(), hits, snapshot_, budget);
            write_json(res, 200, context_json(bundle));
        });
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        // only fill in routes that produced no body (unknown paths, bad methods)
        if (res.body.empty())
            write_json(res, res.status, error_json("not_found", "no such endpoint"));
    });
}

void SearchService::run() {
    auto [host, port] = split_bind_address(config_.bind_address);
    httplib::Server server;
    register_routes(server);
    server_ = &server;
    log::info("serving on " + config_.bind_address + " (" + std::to_string(snapshot_.n_docs()) +
              " docs)");
    bool ok = server.listen(host, port);
    server_ = nullptr;
    if (!ok) throw IoError("cannot bind " + config_.bind_address);
}

void SearchService::stop() {
    if (server_ != nullptr) server_->stop();
}

namespace {
SearchService* g_running_service = nullptr;

void handle_signal(int) {
    if (g_running_service != nullptr) g_running_service->stop();
}
}  // namespace

int run_server(const ServiceConfig& config) {
    try {
        SearchService service(load_index(config.index_path), config);
        g_running_service = &service;
        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        service.run();
        g_running_service = nullptr;
        return 0;
    } catch (const Error& e) {
        log::error(e.what());
        return 1;
    }
}

}  // namespace ragsearch
