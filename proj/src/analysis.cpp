#include "ragsearch/analysis.hpp"

#include <cctype>
#include <fstream>

#include "ragsearch/errors.hpp"
#include "ragsearch/unicode.hpp"

namespace ragsearch {

namespace {

// The classic 33-word English stop set used by most full-text defaults.
const char* kDefaultStopwords[] = {
    "a",    "an",   "and",  "are",   "as",   "at",    "be",    "but",  "by",
    "for",  "if",   "in",   "into",  "is",   "it",    "no",    "not",  "of",
    "on",   "or",   "such", "that",  "the",  "their", "then",  "there",
    "these", "they", "this", "to",   "was",  "will",  "with",
};

// Decodes the entity starting at text[i] (which is '&'). On success appends
// the decoded text and returns the index past the entity; otherwise returns
// i (caller emits '&' verbatim).
std::size_t decode_entity(std::string_view text, std::size_t i, std::string& out) {
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi == i + 1 || semi - i > 12) return i;
    std::string_view name = text.substr(i + 1, semi - i - 1);
    if (name == "amp") {
        out.push_back('&');
    } else if (name == "lt") {
        out.push_back('<');
    } else if (name == "gt") {
        out.push_back('>');
    } else if (name == "quot") {
        out.push_back('"');
    } else if (name.size() >= 2 && name[0] == '#') {
        bool hex = name[1] == 'x' || name[1] == 'X';
        std::size_t pos = hex ? 2 : 1;
        if (pos >= name.size()) return i;
        char32_t cp = 0;
        for (; pos < name.size(); ++pos) {
            char c = name[pos];
            int digit;
            if (c >= '0' && c <= '9') {
                digit = c - '0';
            } else if (hex && c >= 'a' && c <= 'f') {
                digit = c - 'a' + 10;
            } else if (hex && c >= 'A' && c <= 'F') {
                digit = c - 'A' + 10;
            } else {
                return i;
            }
            cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(digit);
            if (cp > 0x10FFFF) return i;
        }
        unicode::append_utf8(out, cp);
    } else {
        return i;
    }
    return semi + 1;
}

}  // namespace

AnalyzerConfig AnalyzerConfig::standard() {
    AnalyzerConfig config;
    config.stopwords = default_stopwords();
    return config;
}

std::string strip_html(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '<') {
            std::size_t close = raw.find('>', i + 1);
            if (close == std::string_view::npos) {
                // Unclosed tag: leave the rest verbatim.
                out.append(raw.substr(i));
                break;
            }
            out.push_back(' ');
            i = close + 1;
        } else if (c == '&') {
            std::size_t next = decode_entity(raw, i, out);
            if (next == i) {
                out.push_back('&');
                ++i;
            } else {
                i = next;
            }
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return out;
}

std::vector<Term> tokenize(std::string_view text) {
    std::vector<Term> tokens;
    std::string current;
    for (char32_t cp : unicode::decode_utf8(text)) {
        if (unicode::is_alnum(cp)) {
            unicode::append_utf8(current, cp);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<Term> analyze(std::string_view raw, const AnalyzerConfig& config) {
    std::vector<Term> tokens;
    if (config.strip_html) {
        tokens = tokenize(strip_html(raw));
    } else {
        tokens = tokenize(raw);
    }
    std::vector<Term> out;
    out.reserve(tokens.size());
    for (Term& token : tokens) {
        if (config.lowercase) token = unicode::lowercase(token);
        if (config.stopwords.count(token) > 0) continue;
        out.push_back(std::move(token));
    }
    return out;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words(std::begin(kDefaultStopwords),
                                             std::end(kDefaultStopwords));
    return words;
}

std::set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos || line[begin] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t");
        words.insert(unicode::lowercase(std::string_view(line).substr(begin, end - begin + 1)));
    }
    return words;
}

}  // namespace ragsearch
