#include "ragsearch/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ragsearch/errors.hpp"

namespace ragsearch {

namespace {

// Shortest round-trip decimal, the shared number formatting rule.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_fixed(double v, int precision) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(precision);
    out << v;
    return out.str();
}

}  // namespace

Metrics precision_recall_f1(std::span<const std::string> retrieved,
                            const std::set<std::string>& relevant) {
    if (relevant.empty()) throw EmptyRelevantSet("relevant set must be non-empty");

    std::set<std::string> seen;
    std::size_t hits = 0;
    for (const std::string& id : retrieved) {
        if (relevant.count(id) > 0 && seen.insert(id).second) ++hits;
    }

    Metrics m;
    m.precision = retrieved.empty()
                      ? 0.0
                      : static_cast<double>(hits) / static_cast<double>(retrieved.size());
    m.recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
    m.f1 = (m.precision + m.recall) == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

EvalResult evaluate_run(const IndexSnapshot& snapshot, std::span<const EvalQuery> queries,
                        const Qrels& qrels, const ScorerConfig& scorer, std::size_t k,
                        unsigned n_threads) {
    for (const EvalQuery& query : queries) {
        if (qrels.judgments.count(query.query_id) == 0) {
            throw MissingJudgment("no relevance judgments for query " + query.query_id);
        }
    }

    struct PerQuery {
        Metrics metrics;
        bool empty_query = false;
    };
    std::vector<PerQuery> rows(queries.size());

    auto run_one = [&](std::size_t i) {
        const EvalQuery& query = queries[i];
        const std::set<std::string>& relevant = qrels.judgments.at(query.query_id);
        try {
            RankedList ranked = search(snapshot, query.text, scorer, k);
            std::vector<std::string> retrieved;
            retrieved.reserve(ranked.hits.size());
            for (const ScoredHit& hit : ranked.hits) retrieved.push_back(hit.external_id);
            rows[i].metrics = precision_recall_f1(retrieved, relevant);
        } catch (const EmptyQuery&) {
            rows[i].empty_query = true;  // counts as (0,0,0)
        }
    };

    if (n_threads == 0) {
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    if (n_threads <= 1 || queries.size() < 2) {
        for (std::size_t i = 0; i < queries.size(); ++i) run_one(i);
    } else {
        // Queries are independent; workers write disjoint slots and the fold
        // below runs in index order, so the result is thread-count invariant.
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < queries.size(); i = next.fetch_add(1)) {
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(n_threads, queries.size()); ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) t.join();
    }

    // Fold in query_id order so the aggregate is invariant to both thread
    // scheduling and input permutation.
    std::vector<std::size_t> fold_order(queries.size());
    for (std::size_t i = 0; i < fold_order.size(); ++i) fold_order[i] = i;
    std::sort(fold_order.begin(), fold_order.end(), [&](std::size_t a, std::size_t b) {
        return queries[a].query_id < queries[b].query_id;
    });

    EvalResult result;
    result.scorer_name = std::string(scorer_name(scorer.kind));
    result.k = k;
    result.n_queries = queries.size();
    for (std::size_t i : fold_order) {
        const PerQuery& row = rows[i];
        result.precision += row.metrics.precision;
        result.recall += row.metrics.recall;
        result.f1 += row.metrics.f1;
        if (row.empty_query) ++result.n_empty_queries;
    }
    if (!queries.empty()) {
        auto n = static_cast<double>(queries.size());
        result.precision /= n;
        result.recall /= n;
        result.f1 /= n;
    }
    return result;
}

ReportFormat report_format_from_name(std::string_view name) {
    if (name == "table") return ReportFormat::table;
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw DomainError("unknown report format: " + std::string(name));
}

std::string emit_report(std::span<const EvalResult> results, ReportFormat format) {
    switch (format) {
        case ReportFormat::csv: {
            std::string out = "scorer,k,precision,recall,f1,n_queries\n";
            for (const EvalResult& r : results) {
                out += r.scorer_name;
                out += ',' + std::to_string(r.k);
                out += ',' + format_double(r.precision);
                out += ',' + format_double(r.recall);
                out += ',' + format_double(r.f1);
                out += ',' + std::to_string(r.n_queries);
                out += '\n';
            }
            return out;
        }
        case ReportFormat::json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const EvalResult& r : results) {
                rows.push_back({
                    {"scorer", r.scorer_name},
                    {"k", r.k},
                    {"precision", r.precision},
                    {"recall", r.recall},
                    {"f1", r.f1},
                    {"n_queries", r.n_queries},
                });
            }
            return rows.dump(2) + "\n";
        }
        case ReportFormat::table: {
            // Retrieval metrics only; answer-generation quality is a
            // different measurement and is out of scope here.
            std::string out =
                "# macro-averaged retrieval metrics at k (not end-to-end answer accuracy)\n";
            out += "scorer       k   precision  recall     f1         queries\n";
            for (const EvalResult& r : results) {
                std::ostringstream line;
                line.setf(std::ios::left);
                line.width(12);
                line << r.scorer_name;
                line.unsetf(std::ios::left);
                std::string ks = std::to_string(r.k);
                line << ' ' << ks << std::string(ks.size() < 3 ? 3 - ks.size() : 0, ' ');
                line << ' ' << format_fixed(r.precision, 6) << "   " << format_fixed(r.recall, 6)
                     << "   " << format_fixed(r.f1, 6) << "   " << r.n_queries;
                out += line.str();
                out += '\n';
            }
            return out;
        }
    }
    throw DomainError("unknown report format");
}

std::vector<ScorerConfig> comparison_scorers(const Bm25Params& bm25,
                                             const CompositeWeights& composite) {
    std::vector<ScorerConfig> scorers(4);
    scorers[0].kind = ScorerKind::baseline;
    scorers[1].kind = ScorerKind::bm25;
    scorers[1].bm25 = bm25;
    scorers[2].kind = ScorerKind::tfidf_cosine;
    scorers[3].kind = ScorerKind::composite;
    scorers[3].bm25 = bm25;
    scorers[3].composite = composite;
    return scorers;
}

}  // namespace ragsearch
