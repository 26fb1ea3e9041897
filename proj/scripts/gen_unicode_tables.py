#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the Python unicodedata module.

Emits four data sets used by src/unicode.cpp:
  - code point ranges whose general category is L* or Nd (token characters)
  - simple (1:1) lowercase mappings
  - nonzero canonical combining classes
  - canonical decompositions (fully expanded, Hangul excluded) and the
    primary composition pairs derived from them

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def alnum_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        cat = unicodedata.category(chr(cp))
        alnum = cat.startswith("L") or cat == "Nd"
        if alnum and start is None:
            start = cp
        elif not alnum and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def lowercase_pairs():
    pairs = []
    for cp in range(128, MAX_CP):  # ASCII handled inline in C++
        lowered = chr(cp).lower()
        if len(lowered) == 1 and lowered != chr(cp):
            pairs.append((cp, ord(lowered)))
    return pairs


def canonical_decomposition(cp):
    """Direct canonical decomposition, or None (compatibility forms skipped)."""
    decomp = unicodedata.decomposition(chr(cp))
    if not decomp or decomp.startswith("<"):
        return None
    return [int(part, 16) for part in decomp.split()]


def full_decompositions():
    direct = {}
    for cp in range(MAX_CP):
        if is_hangul_syllable(cp):
            continue
        d = canonical_decomposition(cp)
        if d:
            direct[cp] = d

    def expand(cp):
        if cp in direct:
            out = []
            for part in direct[cp]:
                out.extend(expand(part))
            return out
        return [cp]

    return {cp: expand(cp) for cp in direct}


def composition_pairs():
    pairs = []
    for cp in range(MAX_CP):
        if is_hangul_syllable(cp):
            continue
        d = canonical_decomposition(cp)
        if not d or len(d) != 2:
            continue
        a, b = d
        # Primary composite iff NFC maps the decomposed pair back to it;
        # this inherently honors the composition exclusions.
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            pairs.append(((a << 21) | b, cp))
    pairs.sort()
    return pairs


def ccc_entries():
    out = []
    for cp in range(MAX_CP):
        ccc = unicodedata.combining(chr(cp))
        if ccc:
            out.append((cp, ccc))
    return out


def emit(out):
    w = out.write
    w("// Generated by scripts/gen_unicode_tables.py -- do not edit.\n")
    w("// Source: Python unicodedata, UCD version %s\n\n"
      % unicodedata.unidata_version)

    ranges = alnum_ranges()
    w("inline constexpr CpRange kAlnumRanges[] = {\n")
    for lo, hi in ranges:
        w("    {0x%X, 0x%X},\n" % (lo, hi))
    w("};\n\n")

    lower = lowercase_pairs()
    w("inline constexpr CpPair kLowerMap[] = {\n")
    for cp, lc in lower:
        w("    {0x%X, 0x%X},\n" % (cp, lc))
    w("};\n\n")

    ccc = ccc_entries()
    w("inline constexpr CccEntry kCccTable[] = {\n")
    for cp, c in ccc:
        w("    {0x%X, %d},\n" % (cp, c))
    w("};\n\n")

    decomp = full_decompositions()
    pool = []
    entries = []
    for cp in sorted(decomp):
        seq = decomp[cp]
        entries.append((cp, len(pool), len(seq)))
        pool.extend(seq)
    w("inline constexpr DecompEntry kDecompTable[] = {\n")
    for cp, off, ln in entries:
        w("    {0x%X, %d, %d},\n" % (cp, off, ln))
    w("};\n\n")
    w("inline constexpr char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 8):
        w("    " + ", ".join("0x%X" % c for c in pool[i:i + 8]) + ",\n")
    w("};\n\n")

    comp = composition_pairs()
    w("inline constexpr CompEntry kCompTable[] = {\n")
    for key, cp in comp:
        w("    {0x%XULL, 0x%X},\n" % (key, cp))
    w("};\n")

    sys.stderr.write(
        "alnum ranges: %d, lower pairs: %d, ccc: %d, decomp: %d (pool %d), "
        "comp pairs: %d\n"
        % (len(ranges), len(lower), len(ccc), len(entries), len(pool),
           len(comp)))


if __name__ == "__main__":
    with open("src/unicode_tables.inc", "w") as f:
        emit(f)
