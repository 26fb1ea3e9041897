#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ragsearch/index.hpp"
#include "ragsearch/retrieval.hpp"

namespace ragsearch {

struct ContextPassage {
    std::string external_id;
    std::string title;
    std::string body;
    double score = 0.0;
};

struct ContextBundle {
    std::string query;
    std::vector<ContextPassage> passages;
    std::string rendered;
    std::size_t token_budget = 0;
    std::size_t tokens_used = 0;
};

// Fixed per-passage overhead charged on top of the passage's analyzed term
// count, covering the rank marker, title line and separators.
inline constexpr std::size_t kPassageOverheadTokens = 8;

// Packs hits into a token-budgeted context block. Passages are taken in rank
// order and assembly stops at the first passage that does not fit entirely
// (never truncated mid-passage), so growing the budget only ever appends.
// A passage costs its stored analyzed term count plus kPassageOverheadTokens.
// Rendered format per passage: "[{rank}] {title}\n{body}\n\n".
// budget == 0 is a DomainError; a budget too small for the first passage
// yields an empty bundle.
ContextBundle assemble_context(const std::string& query, const RankedList& hits,
                               const IndexSnapshot& snapshot, std::size_t token_budget);

}  // namespace ragsearch
