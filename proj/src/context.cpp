#include "ragsearch/context.hpp"

#include "ragsearch/errors.hpp"

namespace ragsearch {

ContextBundle assemble_context(const std::string& query, const RankedList& hits,
                               const IndexSnapshot& snapshot, std::size_t token_budget) {
    if (token_budget == 0) throw DomainError("token budget must be positive");

    ContextBundle bundle;
    bundle.query = query;
    bundle.token_budget = token_budget;

    std::size_t remaining = token_budget;
    std::size_t rank = 0;
    for (const ScoredHit& hit : hits.hits) {
        const StoredDocument& doc = snapshot.doc(hit.doc_id);
        std::size_t cost = doc.length_tokens + kPassageOverheadTokens;
        if (cost > remaining) break;  // whole-passage rule: stop, don't skip ahead
        remaining -= cost;
        ++rank;
        bundle.rendered += "[" + std::to_string(rank) + "] " + doc.title + "\n" + doc.body + "\n\n";
        bundle.passages.push_back(ContextPassage{doc.external_id, doc.title, doc.body, hit.score});
    }
    bundle.tokens_used = token_budget - remaining;
    return bundle;
}

}  // namespace ragsearch
