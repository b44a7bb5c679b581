#include "plad/unicode.hpp"

namespace plad::unicode {

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = s[i];
    if (c < 0x80) {
      out.push_back(c);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    // reject overlongs, surrogates, out-of-range
    if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF) ||
        (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
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
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (char32_t cp : cps) out += encode_utf8(cp);
  return out;
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_cjk(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||    // unified ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0xF900 && cp <= 0xFAFF) ||    // compatibility ideographs
         (cp >= 0x20000 && cp <= 0x2A6DF) ||  // extension B
         (cp >= 0x3040 && cp <= 0x30FF) ||    // hiragana + katakana
         (cp >= 0x31F0 && cp <= 0x31FF) ||    // katakana phonetic ext
         (cp >= 0xFF66 && cp <= 0xFF9D) ||    // halfwidth katakana
         (cp >= 0xAC00 && cp <= 0xD7A3);      // hangul syllables
}

bool is_word_char(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
      cp == '_') {
    return true;
  }
  if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return true;  // Latin-1/A/B letters
  if (cp >= 0x370 && cp <= 0x3FF) return true;                             // Greek
  if (cp >= 0x400 && cp <= 0x4FF) return true;                             // Cyrillic
  if (cp >= 0xFF10 && cp <= 0xFF19) return true;                           // fullwidth digits
  if (cp >= 0xFF21 && cp <= 0xFF3A) return true;                           // fullwidth A-Z
  if (cp >= 0xFF41 && cp <= 0xFF5A) return true;                           // fullwidth a-z
  return false;
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    switch (cp) {
      case '!':
      case '"':
      case '#':
      case '%':
      case '&':
      case '\'':
      case '(':
      case ')':
      case '*':
      case ',':
      case '-':
      case '.':
      case '/':
      case ':':
      case ';':
      case '?':
      case '@':
      case '[':
      case '\\':
      case ']':
      case '{':
      case '}':
        return true;
      default:
        return false;
    }
  }
  if (cp == 0xA1 || cp == 0xA7 || cp == 0xAB || cp == 0xB6 || cp == 0xB7 || cp == 0xBB ||
      cp == 0xBF) {
    return true;  // Latin-1 punctuation
  }
  if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, ellipsis
  if (cp >= 0x2030 && cp <= 0x205E) return true;  // general punctuation
  if (cp >= 0x3001 && cp <= 0x303F) return true;  // CJK symbols and punctuation
  if (cp >= 0xFE10 && cp <= 0xFE19) return true;  // vertical forms
  if (cp >= 0xFE30 && cp <= 0xFE4F) return true;  // CJK compatibility forms
  if (cp >= 0xFE50 && cp <= 0xFE6B) return true;  // small forms
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;  // fullwidth ! " # ... /
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;  // fullwidth : ; < = > ? @
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;  // fullwidth [ \ ] ^ _ `
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;  // fullwidth { | } ~ halfwidth 。「」、
  return false;
}

bool is_emoji_base(char32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // misc symbols and pictographs
         (cp >= 0x1F600 && cp <= 0x1F64F) ||  // emoticons
         (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // transport and map
         (cp >= 0x1F900 && cp <= 0x1F9FF) ||  // supplemental symbols
         (cp >= 0x1FA70 && cp <= 0x1FAFF) ||  // symbols and pictographs ext-A
         (cp >= 0x2600 && cp <= 0x26FF) ||    // misc symbols
         (cp >= 0x2700 && cp <= 0x27BF) ||    // dingbats
         (cp >= 0x2B00 && cp <= 0x2B5F) ||    // arrows, stars
         cp == 0x2139 || cp == 0x203C || cp == 0x2049 || cp == 0x24C2 ||
         (cp >= 0x1F000 && cp <= 0x1F0FF);  // mahjong, dominoes, cards
}

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0E || cp == 0xFE0F || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

bool is_regional_indicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

bool is_format_ignorable(char32_t cp) {
  return cp == 0x200B || cp == 0x200C || cp == 0x200E || cp == 0x200F || cp == 0xFEFF ||
         cp == 0x00AD || (cp >= 0x2060 && cp <= 0x2064) || (cp >= 0x202A && cp <= 0x202E);
}

std::size_t count_visible(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::size_t n = 0;
  for (char32_t cp : cps) {
    if (!is_whitespace(cp) && !is_format_ignorable(cp)) ++n;
  }
  return n;
}

std::size_t count_codepoints(std::string_view text) { return decode_utf8(text).size(); }

std::string_view trim(std::string_view text) {
  // ASCII fast path both ends, then full Unicode check on the remainder.
  auto is_ascii_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  };
  std::size_t b = 0, e = text.size();
  while (b < e && is_ascii_ws(text[b])) ++b;
  while (e > b && is_ascii_ws(text[e - 1])) --e;
  return text.substr(b, e - b);
}

}  // namespace plad::unicode
