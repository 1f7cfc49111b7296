#include "coword/unicode.hpp"

namespace coword::uni {

char32_t decode(std::string_view s, std::size_t& pos) {
    unsigned char b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return pos + i < s.size() &&
               (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
    };
    auto bits = [&](std::size_t i) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i]) & 0x3F);
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x1F) << 6) | bits(1);
        pos += 2;
        return cp < 0x80 ? kReplacement : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x0F) << 12) | (bits(1) << 6) | bits(2);
        pos += 3;
        return cp < 0x800 ? kReplacement : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x07) << 18) | (bits(1) << 12) |
                      (bits(2) << 6) | bits(3);
        pos += 4;
        return (cp < 0x10000 || cp > 0x10FFFF) ? kReplacement : cp;
    }
    ++pos;
    return kReplacement;
}

void encode(char32_t cp, std::string& out) {
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

namespace {

struct Range {
    char32_t lo, hi;
};

// inclusive letter ranges, ordered
constexpr Range kLetterRanges[] = {
    {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00B5, 0x00B5},
    {0x00BA, 0x00BA}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02FF},
    {0x0370, 0x0374}, {0x0376, 0x0377}, {0x037A, 0x037D}, {0x037F, 0x037F},
    {0x0386, 0x0386}, {0x0388, 0x03FF}, {0x0400, 0x052F}, {0x0531, 0x0556},
    {0x0561, 0x0587}, {0x05D0, 0x05EA}, {0x0620, 0x064A}, {0x0671, 0x06D3},
    {0x0900, 0x097F}, {0x0E01, 0x0E3A}, {0x0E40, 0x0E4E}, {0x10A0, 0x10FF},
    {0x1E00, 0x1FFF}, {0x3041, 0x3096}, {0x30A1, 0x30FA}, {0x3400, 0x4DBF},
    {0x4E00, 0x9FFF}, {0xA000, 0xA48F}, {0xAC00, 0xD7A3}, {0xF900, 0xFAFF},
    {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A},
};

// combining marks keep composed sequences together inside a token
constexpr Range kMarkRanges[] = {
    {0x0300, 0x036F}, {0x0483, 0x0489}, {0x0591, 0x05BD},
    {0x0610, 0x061A}, {0x064B, 0x065F}, {0x0E31, 0x0E31},
    {0x0E34, 0x0E3A}, {0x0E47, 0x0E4E},
};

constexpr Range kDigitRanges[] = {
    {0x0030, 0x0039}, {0x0660, 0x0669}, {0x06F0, 0x06F9},
    {0x0966, 0x096F}, {0xFF10, 0xFF19},
};

bool in_ranges(char32_t cp, const Range* ranges, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (cp < ranges[i].lo) return false;
        if (cp <= ranges[i].hi) return true;
    }
    return false;
}

}  // namespace

bool is_word_char(char32_t cp) {
    if (cp == U'_') return true;
    if (in_ranges(cp, kDigitRanges, std::size(kDigitRanges))) return true;
    if (in_ranges(cp, kLetterRanges, std::size(kLetterRanges))) return true;
    return in_ranges(cp, kMarkRanges, std::size(kMarkRanges));
}

bool is_space(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

char32_t to_upper(char32_t cp) {
    if (cp >= U'a' && cp <= U'z') return cp - 0x20;
    // Latin-1 (0xF7 is the division sign, 0xDF has no simple upper)
    if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 0x20;
    if (cp == 0x00FF) return 0x0178;
    // Latin Extended-A even/odd pairs
    if (cp >= 0x0100 && cp <= 0x0137) return (cp & 1) ? cp - 1 : cp;
    if (cp >= 0x0139 && cp <= 0x0148) return (cp & 1) ? cp : cp - 1;
    if (cp >= 0x014A && cp <= 0x0177) return (cp & 1) ? cp - 1 : cp;
    if (cp == 0x0131) return 0x0049;
    if (cp == 0x017A || cp == 0x017C || cp == 0x017E) return cp - 1;
    if (cp == 0x017F) return 0x0053;
    // Greek
    if (cp == 0x03AC) return 0x0386;
    if (cp >= 0x03AD && cp <= 0x03AF) return cp - 0x25;
    if (cp == 0x03C2) return 0x03A3;
    if (cp >= 0x03B1 && cp <= 0x03C9 && cp != 0x03C2) return cp - 0x20;
    if (cp == 0x03CA) return 0x03AA;
    if (cp == 0x03CB) return 0x03AB;
    if (cp == 0x03CC) return 0x038C;
    if (cp == 0x03CD) return 0x038E;
    if (cp == 0x03CE) return 0x038F;
    // Cyrillic
    if (cp >= 0x0430 && cp <= 0x044F) return cp - 0x20;
    if (cp >= 0x0450 && cp <= 0x045F) return cp - 0x50;
    return cp;
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0100 && cp <= 0x0137) return (cp & 1) ? cp : cp + 1;
    if (cp >= 0x0139 && cp <= 0x0148) return (cp & 1) ? cp + 1 : cp;
    if (cp >= 0x014A && cp <= 0x0177) return (cp & 1) ? cp : cp + 1;
    if (cp == 0x0130) return 0x0069;
    if (cp == 0x0179 || cp == 0x017B || cp == 0x017D) return cp + 1;
    // Greek
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
    if (cp == 0x038C) return 0x03CC;
    if (cp == 0x038E) return 0x03CD;
    if (cp == 0x038F) return 0x03CE;
    if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
    if (cp == 0x03AA) return 0x03CA;
    if (cp == 0x03AB) return 0x03CB;
    // Cyrillic
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    return cp;
}

std::string upper(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) encode(to_upper(decode(s, pos)), out);
    return out;
}

std::string lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) encode(to_lower(decode(s, pos)), out);
    return out;
}

}  // namespace coword::uni
