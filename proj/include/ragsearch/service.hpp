#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

#include "ragsearch/context.hpp"
#include "ragsearch/index.hpp"
#include "ragsearch/retrieval.hpp"

namespace httplib {
class Server;
}

namespace ragsearch {

struct ServiceConfig {
    std::string index_path;
    std::string bind_address = "127.0.0.1:7700";
    ScorerKind default_scorer = ScorerKind::bm25;
    std::size_t default_k = 5;
    Bm25Params bm25;
    CompositeWeights composite;
};

// Shared serializers so the CLI and the HTTP service emit bit-identical JSON
// for the same result. Numbers use shortest round-trip decimals.
nlohmann::json hits_json(const RankedList& hits, const IndexSnapshot& snapshot);
nlohmann::json context_json(const ContextBundle& bundle);
nlohmann::json error_json(const std::string& code, const std::string& message);

// Read-only search service over one immutable snapshot.
//   GET  /healthz                       -> {"status":"ok","n_docs":N}
//   GET  /search?q=...&k=5&scorer=bm25  -> {"query","scorer","k","hits":[...]}
//   POST /context {"query","k","token_budget"} -> ContextBundle fields
// Errors: {"error":{"code","message"}} with 400 for bad input, 404 for
// unknown routes, 500 otherwise.
class SearchService {
  public:
    SearchService(IndexSnapshot snapshot, ServiceConfig config);

    void register_routes(httplib::Server& server) const;

    // Binds, serves until stop() (or SIGINT/SIGTERM via run_server below).
    // Throws IoError if the address cannot be parsed or bound.
    void run();
    void stop();

    const IndexSnapshot& snapshot() const { return snapshot_; }
    const ServiceConfig& config() const { return config_; }

  private:
    IndexSnapshot snapshot_;
    ServiceConfig config_;
    httplib::Server* server_ = nullptr;  // only set while run() is active
};

// Loads the index, installs signal handlers and serves until terminated.
// Returns a process exit code (nonzero on startup failure).
int run_server(const ServiceConfig& config);

}  // namespace ragsearch
