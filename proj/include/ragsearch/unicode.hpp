#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ragsearch::unicode {

// True for general categories L* and Nd (the token character classes).
bool is_alnum(char32_t cp);

// Simple 1:1 lowercase mapping; code points without one map to themselves.
char32_t simple_lowercase(char32_t cp);

// Decodes UTF-8, replacing invalid sequences with U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view text);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Canonical composition normal form (NFC).
std::string nfc(std::string_view text);

// Lowercases a UTF-8 string code point by code point.
std::string lowercase(std::string_view text);

}  // namespace ragsearch::unicode
