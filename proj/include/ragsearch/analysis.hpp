#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ragsearch {

using Term = std::string;

// Configuration for the document/query analysis pipeline. The same config
// must be applied to both sides or term matching breaks down.
struct AnalyzerConfig {
    bool lowercase = true;
    bool strip_html = true;
    std::set<std::string> stopwords;  // stored lowercase; compared after case folding

    // lowercase + strip_html + the built-in English stopword list.
    static AnalyzerConfig standard();
};

// Replaces <...> tag spans with a single space and decodes the entities
// &amp; &lt; &gt; &quot; and &#NN; / &#xNN;. A '<' with no closing '>' is
// left verbatim.
std::string strip_html(std::string_view raw);

// Maximal runs of Unicode letters and digits, in input order. No case
// folding or stopword handling.
std::vector<Term> tokenize(std::string_view text);

// Full pipeline: strip_html (if enabled) -> tokenize -> lowercase (if
// enabled) -> drop stopwords. Pure; duplicates and order are preserved.
std::vector<Term> analyze(std::string_view raw, const AnalyzerConfig& config);

// Built-in list of classic English function words, already lowercase.
const std::set<std::string>& default_stopwords();

// One term per line, '#' starts a comment line, terms folded to lowercase.
std::set<std::string> load_stopword_file(const std::string& path);

}  // namespace ragsearch
