#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace coword::uni {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at s[pos]; advances pos past it.
// Invalid sequences decode to U+FFFD and advance one byte.
char32_t decode(std::string_view s, std::size_t& pos);

void encode(char32_t cp, std::string& out);

// Letter/digit/underscore, the characters a hashtag may contain.
// Letter coverage is range-table based: Latin (incl. supplements and
// extensions), Greek, Cyrillic, Armenian, Hebrew, Arabic, Devanagari,
// Thai, Georgian, CJK, Kana, Hangul, plus combining marks so composed
// sequences survive intact.
bool is_word_char(char32_t cp);

bool is_space(char32_t cp);

// Simple case mappings for ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic; identity elsewhere.
char32_t to_upper(char32_t cp);
char32_t to_lower(char32_t cp);

std::string upper(std::string_view s);
std::string lower(std::string_view s);

}  // namespace coword::uni
