#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "ragsearch/analysis.hpp"
#include "ragsearch/errors.hpp"

using namespace ragsearch;

TEST_CASE("tokenize splits on non-alphanumerics and keeps order") {
    CHECK(tokenize("The quick brown fox") ==
          std::vector<Term>{"The", "quick", "brown", "fox"});
    CHECK(tokenize("state-of-the-art, really!") ==
          std::vector<Term>{"state", "of", "the", "art", "really"});
    CHECK(tokenize("v2.0 has 42 fixes") == std::vector<Term>{"v2", "0", "has", "42", "fixes"});
    CHECK(tokenize("snake_case splits") == std::vector<Term>{"snake", "case", "splits"});
    CHECK(tokenize("") == std::vector<Term>{});
    CHECK(tokenize("...---...") == std::vector<Term>{});
    CHECK(tokenize("caf\xc3\xa9 au lait") == std::vector<Term>{"caf\xc3\xa9", "au", "lait"});
    CHECK(tokenize("\xe4\xb8\xad\xe6\x96\x87 text") ==
          std::vector<Term>{"\xe4\xb8\xad\xe6\x96\x87", "text"});
}

TEST_CASE("strip_html removes tags and decodes entities") {
    CHECK(strip_html("plain text") == "plain text");
    CHECK(strip_html("<p>hello</p>") == " hello ");
    CHECK(strip_html("a<br/>b") == "a b");
    CHECK(strip_html("x &amp; y &lt;z&gt;") == "x & y <z>");
    CHECK(strip_html("&quot;q&quot;") == "\"q\"");
    CHECK(strip_html("&#65;&#x42;") == "AB");
    // unclosed tag start stays verbatim
    CHECK(strip_html("3 < 4") == "3 < 4");
    CHECK(strip_html("<a href=\"x\">link</a> tail") == " link  tail");
    // unknown entity passes through untouched
    CHECK(strip_html("&nope; stays") == "&nope; stays");
}

TEST_CASE("analyze lowercases, strips markup and drops stopwords") {
    AnalyzerConfig config = AnalyzerConfig::standard();
    CHECK(analyze("The Quick <b>Brown</b> Fox!", config) ==
          std::vector<Term>{"quick", "brown", "fox"});
    // duplicates and order preserved
    CHECK(analyze("dog cat dog", config) == std::vector<Term>{"dog", "cat", "dog"});
    // only stopwords -> empty
    CHECK(analyze("the of and", config).empty());
    CHECK(analyze("", config).empty());
    CHECK(analyze("!!!", config).empty());
}

TEST_CASE("analyze respects disabled stages") {
    AnalyzerConfig config;  // no stopwords, defaults on
    config.stopwords.clear();
    CHECK(analyze("The the THE", config) == std::vector<Term>{"the", "the", "the"});

    config.lowercase = false;
    CHECK(analyze("The the", config) == std::vector<Term>{"The", "the"});

    config.strip_html = false;
    // tags are not stripped, but '<'/'>' are not token characters anyway;
    // entity text survives as its literal tokens
    CHECK(analyze("a &amp; b", config) == std::vector<Term>{"a", "amp", "b"});
}

TEST_CASE("stopword matching happens after case folding") {
    AnalyzerConfig config;
    config.stopwords = {"the"};
    CHECK(analyze("THE The the", config).empty());
}

TEST_CASE("default stopword list is the classic english set") {
    const auto& sw = default_stopwords();
    CHECK(sw.size() == 33);
    CHECK(sw.count("the") == 1);
    CHECK(sw.count("is") == 1);
    CHECK(sw.count("with") == 1);
    CHECK(sw.count("dog") == 0);
}

TEST_CASE("load_stopword_file parses comments and folds case") {
    std::string path = "stopwords_test_tmp.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "Foo\n"
            << "\n"
            << "  bar  \n"
            << "BAZ\n";
    }
    auto words = load_stopword_file(path);
    CHECK(words == std::set<std::string>{"foo", "bar", "baz"});
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_stopword_file("does_not_exist_anywhere.txt"), IoError);
}
