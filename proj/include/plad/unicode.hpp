#pragma once

#include <string>
#include <string_view>

namespace plad::unicode {

/// Decodes UTF-8; malformed byte sequences become U+FFFD (one replacement
/// per bad byte) so dirty crawled text never aborts a pipeline.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view cps);
std::string encode_utf8(char32_t cp);

bool is_whitespace(char32_t cp);

/// CJK ideographs plus kana and hangul syllables: scripts tokenized one
/// character per token.
bool is_cjk(char32_t cp);

/// Characters that join into multi-character word tokens (Latin letters,
/// digits, underscore, Latin-1/Extended letters).
bool is_word_char(char32_t cp);

bool is_punctuation(char32_t cp);

bool is_emoji_base(char32_t cp);
bool is_emoji_modifier(char32_t cp);  // VS15/VS16, skin tones
bool is_regional_indicator(char32_t cp);
inline bool is_zwj(char32_t cp) { return cp == 0x200D; }

/// Zero-width/formatting characters that are neither visible text nor
/// whitespace (ZWSP, bidi marks, BOM).
bool is_format_ignorable(char32_t cp);

/// Unicode code points in `text` that are neither whitespace nor ignorable.
std::size_t count_visible(std::string_view text);

/// Code point count of the UTF-8 string.
std::size_t count_codepoints(std::string_view text);

/// Input with leading/trailing ASCII+Unicode whitespace removed.
std::string_view trim(std::string_view text);

}  // namespace plad::unicode
