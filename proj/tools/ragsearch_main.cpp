// ragsearch: build, query and evaluate inverted-index retrieval over
// SQuAD-format corpora, or serve it over HTTP.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ragsearch/analysis.hpp"
#include "ragsearch/context.hpp"
#include "ragsearch/errors.hpp"
#include "ragsearch/eval.hpp"
#include "ragsearch/index.hpp"
#include "ragsearch/ingest.hpp"
#include "ragsearch/log.hpp"
#include "ragsearch/retrieval.hpp"
#include "ragsearch/service.hpp"

namespace {

using namespace ragsearch;

struct BuildArgs {
    std::string input;
    std::string out;
    std::optional<std::size_t> sample;
    std::uint64_t seed = 0;
    std::string stopwords_file;
};

int cmd_build(const BuildArgs& args) {
    AnalyzerConfig analyzer = AnalyzerConfig::standard();
    if (!args.stopwords_file.empty()) analyzer.stopwords = load_stopword_file(args.stopwords_file);

    IngestOutput corpus = parse_squad_file(args.input);
    std::optional<SampleSpec> sample;
    if (args.sample) sample = SampleSpec{*args.sample, args.seed};
    BenchmarkIndex bench = build_benchmark_index(corpus, analyzer, sample);
    persist(bench.snapshot, args.out);

    const CorpusStats& stats = bench.snapshot.stats();
    std::cout << "indexed " << stats.n_docs << " paragraphs (" << corpus.stats.n_deduped
              << " duplicates removed, avgdl " << stats.avgdl << ") -> " << args.out << "\n";
    return 0;
}

struct SearchArgs {
    std::string index;
    std::string query;
    std::size_t k = 5;
    std::string scorer = "bm25";
    double k1 = 1.2;
    double b = 0.75;
};

int cmd_search(const SearchArgs& args) {
    IndexSnapshot snapshot = load_index(args.index);
    ScorerConfig scorer;
    scorer.kind = scorer_kind_from_name(args.scorer);
    scorer.bm25.k1 = args.k1;
    scorer.bm25.b = args.b;
    scorer.bm25.validate();

    RankedList hits = search(snapshot, args.query, scorer, args.k);
    nlohmann::json out{{"query", args.query},
                       {"scorer", std::string(scorer_name(scorer.kind))},
                       {"k", args.k},
                       {"hits", hits_json(hits, snapshot)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct ContextArgs {
    std::string index;
    std::string query;
    std::size_t k = 5;
    std::size_t budget = 512;
};

int cmd_context(const ContextArgs& args) {
    IndexSnapshot snapshot = load_index(args.index);
    RankedList hits = search(snapshot, args.query, ScorerConfig{}, args.k);
    ContextBundle bundle = assemble_context(args.query, hits, snapshot, args.budget);
    std::cout << context_json(bundle).dump(2) << "\n";
    return 0;
}

struct EvalArgs {
    std::string index;
    std::string queries;
    std::string scorers = "baseline,bm25,tfidf,composite";
    std::size_t k = 5;
    std::string format = "table";
    std::string out;
};

int cmd_eval(const EvalArgs& args) {
    IndexSnapshot snapshot = load_index(args.index);
    IngestOutput corpus = parse_squad_file(args.queries);

    // keep only queries whose relevant paragraphs exist in this index (a
    // sampled index does not contain every paragraph of the query file)
    std::vector<EvalQuery> queries;
    Qrels qrels;
    std::size_t dropped = 0;
    for (const IngestQuery& q : corpus.queries) {
        const auto& relevant = corpus.qrels.judgments.at(q.query_id);
        bool present = true;
        for (const std::string& id : relevant)
            if (!snapshot.find_external(id)) present = false;
        if (!present) {
            ++dropped;
            continue;
        }
        queries.push_back(EvalQuery{q.query_id, q.text});
        qrels.judgments.emplace(q.query_id, relevant);
    }
    if (dropped > 0)
        log::warn("dropped " + std::to_string(dropped) +
                  " queries whose relevant paragraph is not in the index");
    if (queries.empty()) throw EmptyDataset("no evaluable queries against this index");

    std::vector<std::string> names;
    {
        std::string current;
        for (char c : args.scorers + ",") {
            if (c == ',') {
                if (!current.empty()) names.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
    }
    if (names.empty()) throw DomainError("--scorers must name at least one scorer");

    std::vector<EvalResult> results;
    for (const std::string& name : names) {
        ScorerConfig scorer;
        scorer.kind = scorer_kind_from_name(name);
        results.push_back(evaluate_run(snapshot, queries, qrels, scorer, args.k));
    }

    std::string report = emit_report(results, report_format_from_name(args.format));
    if (args.out.empty()) {
        std::cout << report;
    } else {
        std::ofstream file(args.out, std::ios::binary);
        if (!file) throw IoError("cannot write " + args.out);
        file << report;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverted-index retrieval over SQuAD-format corpora"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "ingest a SQuAD JSON file and write an index");
    build->add_option("--input", build_args.input, "SQuAD 2.0 JSON file")->required();
    build->add_option("--out", build_args.out, "index output path")->required();
    build->add_option("--sample", build_args.sample, "index a seeded sample of N paragraphs");
    build->add_option("--seed", build_args.seed, "sampling seed")->default_val(0);
    build->add_option("--stopwords", build_args.stopwords_file,
                      "stopword file (one word per line, # comments)");

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand("search", "query an index");
    search->add_option("--index", search_args.index, "index path")->required();
    search->add_option("--query", search_args.query, "query text")->required();
    search->add_option("--k", search_args.k, "results to return")->default_val(5);
    search->add_option("--scorer", search_args.scorer, "ranking function")
        ->default_val("bm25")
        ->check(CLI::IsMember({"bm25", "tfidf", "composite"}));
    search->add_option("--k1", search_args.k1, "BM25 k1")->default_val(1.2);
    search->add_option("--b", search_args.b, "BM25 b")->default_val(0.75);

    ContextArgs context_args;
    CLI::App* context = app.add_subcommand("context", "assemble a token-budgeted context block");
    context->add_option("--index", context_args.index, "index path")->required();
    context->add_option("--query", context_args.query, "query text")->required();
    context->add_option("--k", context_args.k, "passages to retrieve")->default_val(5);
    context->add_option("--budget", context_args.budget, "token budget")->default_val(512);

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "run the retrieval benchmark");
    eval->add_option("--index", eval_args.index, "index path")->required();
    eval->add_option("--queries", eval_args.queries, "SQuAD 2.0 JSON file with questions")
        ->required();
    eval->add_option("--scorers", eval_args.scorers, "comma-separated scorer list")
        ->default_val("baseline,bm25,tfidf,composite");
    eval->add_option("--k", eval_args.k, "cutoff")->default_val(5);
    eval->add_option("--format", eval_args.format, "report format")
        ->default_val("table")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    eval->add_option("--out", eval_args.out, "write report to a file instead of stdout");

    ServiceConfig service_config;
    CLI::App* serve = app.add_subcommand("serve", "serve an index over HTTP");
    serve->add_option("--index", service_config.index_path, "index path")->required();
    serve->add_option("--bind", service_config.bind_address, "host:port")
        ->default_val("127.0.0.1:7700");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(build_args);
        if (search->parsed()) return cmd_search(search_args);
        if (context->parsed()) return cmd_context(context_args);
        if (eval->parsed()) return cmd_eval(eval_args);
        if (serve->parsed()) return ragsearch::run_server(service_config);
    } catch (const ragsearch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
