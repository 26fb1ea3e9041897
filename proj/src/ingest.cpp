#include "ragsearch/ingest.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "ragsearch/errors.hpp"
#include "ragsearch/log.hpp"
#include "ragsearch/unicode.hpp"

namespace ragsearch {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError("squad: " + path + ": " + what);
}

const json& expect(const json& node, const char* key, json::value_t type, const std::string& path) {
    auto it = node.find(key);
    if (it == node.end()) fail(path, std::string("missing \"") + key + "\"");
    if (it->type() != type) {
        // accept any integer flavour where a number is expected
        bool numeric_ok = type == json::value_t::number_unsigned &&
                          (it->is_number_integer() || it->is_number_unsigned());
        if (!numeric_ok) fail(path + "." + key, "unexpected type");
    }
    return *it;
}

}  // namespace

IngestOutput parse_squad(std::string_view json_text) {
    json root = json::parse(json_text, nullptr, false);
    if (root.is_discarded()) throw ParseError("squad: not valid JSON");
    if (!root.is_object()) fail("$", "top level must be an object");

    const json& data = expect(root, "data", json::value_t::array, "$");

    IngestOutput out;
    // NFC-normalized context -> index into out.documents
    std::unordered_map<std::string, std::size_t> seen_contexts;
    // external_id of a deduped paragraph -> surviving external_id
    std::unordered_map<std::string, std::string> alias;

    for (std::size_t ai = 0; ai < data.size(); ++ai) {
        std::string apath = "$.data[" + std::to_string(ai) + "]";
        const json& article = data[ai];
        if (!article.is_object()) fail(apath, "article must be an object");
        const json& title_node = expect(article, "title", json::value_t::string, apath);
        std::string title = title_node.get<std::string>();
        const json& paragraphs = expect(article, "paragraphs", json::value_t::array, apath);
        ++out.stats.n_articles;

        for (std::size_t pi = 0; pi < paragraphs.size(); ++pi) {
            std::string ppath = apath + ".paragraphs[" + std::to_string(pi) + "]";
            const json& para = paragraphs[pi];
            if (!para.is_object()) fail(ppath, "paragraph must be an object");
            const json& context_node = expect(para, "context", json::value_t::string, ppath);
            std::string context = context_node.get<std::string>();
            std::string external_id = title + "#" + std::to_string(pi);
            ++out.stats.n_paragraphs;

            std::string canonical = unicode::nfc(context);
            std::string effective_id = external_id;
            auto [slot, inserted] = seen_contexts.emplace(std::move(canonical), out.documents.size());
            if (inserted) {
                out.documents.push_back(IngestDocument{external_id, title, std::move(context)});
            } else {
                effective_id = out.documents[slot->second].external_id;
                alias.emplace(external_id, effective_id);
                ++out.stats.n_deduped;
            }

            const json& qas = expect(para, "qas", json::value_t::array, ppath);
            for (std::size_t qi = 0; qi < qas.size(); ++qi) {
                std::string qpath = ppath + ".qas[" + std::to_string(qi) + "]";
                const json& qa = qas[qi];
                if (!qa.is_object()) fail(qpath, "qa must be an object");
                std::string id = expect(qa, "id", json::value_t::string, qpath).get<std::string>();
                std::string question =
                    expect(qa, "question", json::value_t::string, qpath).get<std::string>();
                bool impossible = false;
                if (auto it = qa.find("is_impossible"); it != qa.end()) {
                    if (!it->is_boolean()) fail(qpath + ".is_impossible", "unexpected type");
                    impossible = it->get<bool>();
                }
                if (!out.qrels.judgments.emplace(id, std::set<std::string>{effective_id}).second)
                    fail(qpath + ".id", "duplicate question id \"" + id + "\"");
                out.queries.push_back(IngestQuery{std::move(id), std::move(question), impossible});
                ++out.stats.n_questions;
                if (impossible) ++out.stats.n_impossible;
            }
        }
    }

    if (out.documents.empty()) throw EmptyDataset("squad: no paragraphs in dataset");
    return out;
}

IngestOutput parse_squad_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return parse_squad(buf.str());
}

namespace {

// Unbiased bounded draw via rejection sampling; stable across platforms,
// unlike std::uniform_int_distribution.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace

BenchmarkIndex build_benchmark_index(const IngestOutput& output, const AnalyzerConfig& analyzer,
                                     std::optional<SampleSpec> sample) {
    std::vector<std::size_t> order(output.documents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::size_t take = order.size();
    if (sample) {
        if (sample->n_paragraphs == 0) throw DomainError("sample size must be positive");
        take = std::min(sample->n_paragraphs, order.size());
        std::mt19937_64 rng(sample->seed);
        // partial Fisher-Yates: the first `take` slots are the sample
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + static_cast<std::size_t>(bounded_uniform(rng, order.size() - i));
            std::swap(order[i], order[j]);
        }
        order.resize(take);
        std::sort(order.begin(), order.end());  // keep corpus order for doc ids
    }

    IndexBuilder builder(analyzer);
    std::set<std::string> kept;
    for (std::size_t i : order) {
        const IngestDocument& doc = output.documents[i];
        builder.add_document(doc.external_id, doc.title, doc.body);
        kept.insert(doc.external_id);
    }

    BenchmarkIndex bench{builder.commit(), {}, {}, 0};
    for (const IngestQuery& q : output.queries) {
        const auto& rel = output.qrels.judgments.at(q.query_id);
        bool present = true;
        for (const std::string& id : rel)
            if (!kept.count(id)) present = false;
        if (!present) {
            ++bench.n_dropped_queries;
            continue;
        }
        bench.queries.push_back(EvalQuery{q.query_id, q.text});
        bench.qrels.judgments.emplace(q.query_id, rel);
    }
    if (bench.n_dropped_queries > 0)
        log::info("sampling dropped " + std::to_string(bench.n_dropped_queries) +
                  " queries whose relevant paragraph was not kept");
    return bench;
}

}  // namespace ragsearch
