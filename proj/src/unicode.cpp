#include "ragsearch/unicode.hpp"

#include <algorithm>
#include <iterator>

namespace ragsearch::unicode {

namespace {

struct CpRange {
    char32_t lo;
    char32_t hi;
};
struct CpPair {
    char32_t cp;
    char32_t value;
};
struct CccEntry {
    char32_t cp;
    std::uint8_t ccc;
};
struct DecompEntry {
    char32_t cp;
    std::uint16_t offset;
    std::uint8_t len;
};
struct CompEntry {
    std::uint64_t key;  // (first << 21) | second
    char32_t composite;
};

#include "unicode_tables.inc"

// Hangul syllable composition is algorithmic, not table-driven.
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

std::uint8_t combining_class(char32_t cp) {
    auto it = std::lower_bound(std::begin(kCccTable), std::end(kCccTable), cp,
                               [](const CccEntry& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kCccTable) && it->cp == cp) return it->ccc;
    return 0;
}

const DecompEntry* find_decomposition(char32_t cp) {
    auto it = std::lower_bound(std::begin(kDecompTable), std::end(kDecompTable), cp,
                               [](const DecompEntry& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kDecompTable) && it->cp == cp) return &*it;
    return nullptr;
}

char32_t compose_pair(char32_t a, char32_t b) {
    // Hangul LV and LVT composition.
    if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
        b < kHangulVBase + kHangulVCount) {
        return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount && (a - kHangulSBase) % kHangulTCount == 0 &&
        b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
        return a + (b - kHangulTBase);
    }
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 21) | b;
    auto it = std::lower_bound(std::begin(kCompTable), std::end(kCompTable), key,
                               [](const CompEntry& e, std::uint64_t k) { return e.key < k; });
    if (it != std::end(kCompTable) && it->key == key) return it->composite;
    return 0;
}

void decompose_cp(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        char32_t s = cp - kHangulSBase;
        out.push_back(kHangulLBase + s / kHangulNCount);
        out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
        char32_t t = s % kHangulTCount;
        if (t != 0) out.push_back(kHangulTBase + t);
        return;
    }
    if (const DecompEntry* e = find_decomposition(cp)) {
        for (int i = 0; i < e->len; ++i) out.push_back(kDecompPool[e->offset + i]);
        return;
    }
    out.push_back(cp);
}

// Stable reordering of combining marks by canonical combining class.
void canonical_order(std::vector<char32_t>& cps) {
    for (std::size_t i = 1; i < cps.size(); ++i) {
        std::uint8_t ccc = combining_class(cps[i]);
        if (ccc == 0) continue;
        std::size_t j = i;
        while (j > 0 && combining_class(cps[j - 1]) > ccc) {
            std::swap(cps[j - 1], cps[j]);
            --j;
        }
    }
}

std::vector<char32_t> compose(const std::vector<char32_t>& cps) {
    std::vector<char32_t> out;
    out.reserve(cps.size());
    std::ptrdiff_t last_starter = -1;
    std::uint8_t last_ccc = 0;
    for (char32_t cp : cps) {
        std::uint8_t ccc = combining_class(cp);
        if (last_starter >= 0 && (last_ccc < ccc || (last_ccc == 0 && ccc == 0))) {
            if (char32_t composed = compose_pair(out[last_starter], cp)) {
                out[last_starter] = composed;
                continue;
            }
        }
        if (ccc == 0) {
            last_starter = static_cast<std::ptrdiff_t>(out.size());
            last_ccc = 0;
        } else {
            last_ccc = ccc;
        }
        out.push_back(cp);
    }
    return out;
}

}  // namespace

bool is_alnum(char32_t cp) {
    if (cp < 128) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    auto it = std::upper_bound(std::begin(kAlnumRanges), std::end(kAlnumRanges), cp,
                               [](char32_t c, const CpRange& r) { return c < r.lo; });
    return it != std::begin(kAlnumRanges) && cp <= std::prev(it)->hi;
}

char32_t simple_lowercase(char32_t cp) {
    if (cp < 128) {
        return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    }
    auto it = std::lower_bound(std::begin(kLowerMap), std::end(kLowerMap), cp,
                               [](const CpPair& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kLowerMap) && it->cp == cp) return it->value;
    return cp;
}

std::vector<char32_t> decode_utf8(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c0 = static_cast<unsigned char>(text[i]);
        if (c0 < 0x80) {
            out.push_back(c0);
            ++i;
            continue;
        }
        int len = 0;
        char32_t cp = 0;
        char32_t min = 0;
        if ((c0 & 0xE0) == 0xC0) {
            len = 2;
            cp = c0 & 0x1F;
            min = 0x80;
        } else if ((c0 & 0xF0) == 0xE0) {
            len = 3;
            cp = c0 & 0x0F;
            min = 0x800;
        } else if ((c0 & 0xF8) == 0xF0) {
            len = 4;
            cp = c0 & 0x07;
            min = 0x10000;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (i + len > text.size()) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            unsigned char c = static_cast<unsigned char>(text[i + k]);
            if ((c & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (c & 0x3F);
        }
        // Reject overlong forms, surrogates and out-of-range values.
        if (!ok || cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

std::string nfc(std::string_view text) {
    std::vector<char32_t> decomposed;
    decomposed.reserve(text.size());
    for (char32_t cp : decode_utf8(text)) decompose_cp(cp, decomposed);
    canonical_order(decomposed);
    return encode_utf8(compose(decomposed));
}

std::string lowercase(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : decode_utf8(text)) append_utf8(out, simple_lowercase(cp));
    return out;
}

}  // namespace ragsearch::unicode
