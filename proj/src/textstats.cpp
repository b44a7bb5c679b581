#include "plad/textstats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "plad/error.hpp"
#include "plad/unicode.hpp"

namespace plad::textstats {

namespace uni = plad::unicode;

std::size_t TokenizedText::word_count() const {
  std::size_t n = 0;
  for (TokenKind k : kinds) {
    if (k == TokenKind::Word) ++n;
  }
  return n;
}

namespace {

constexpr double kLog2 = 0.6931471805599453094;

double log2d(double x) { return std::log(x) / kLog2; }

bool is_sentence_terminator(char32_t cp) {
  return cp == U'。' || cp == U'！' || cp == U'？' || cp == U'!' || cp == U'?' ||
         cp == U'.' || cp == U';';
}

/// Entropy in bits of a count distribution.
double count_entropy(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * log2d(p);
  }
  return h < 0.0 ? 0.0 : h;
}

struct Builder {
  TokenizedText out;
  std::size_t sent_start = 0;  // first token of the open sentence
  std::size_t para_start = 0;  // first sentence of the open paragraph

  void add_token(std::string token, TokenKind kind) {
    if (kind == TokenKind::Emoji) out.emoji_positions.push_back(out.tokens.size());
    out.tokens.push_back(std::move(token));
    out.kinds.push_back(kind);
  }

  void close_sentence() {
    if (out.tokens.size() > sent_start) {
      out.sentences.push_back({sent_start, out.tokens.size()});
      sent_start = out.tokens.size();
    }
  }

  void close_paragraph() {
    close_sentence();
    if (out.sentences.size() > para_start) {
      out.paragraphs.push_back({para_start, out.sentences.size()});
      para_start = out.sentences.size();
    }
  }
};

}  // namespace

TokenizedText tokenize(std::string_view text) {
  std::u32string cps = uni::decode_utf8(text);
  Builder b;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  int newline_run = 0;

  while (i < n) {
    char32_t cp = cps[i];

    if (uni::is_whitespace(cp)) {
      if (cp == U'\n') {
        ++newline_run;
        b.close_sentence();
        if (newline_run >= 2) b.close_paragraph();
      }
      ++i;
      continue;
    }
    newline_run = 0;

    if (uni::is_format_ignorable(cp)) {
      b.out.char_count++;  // counted as visible content, not tokenized
      ++i;
      continue;
    }

    if (uni::is_regional_indicator(cp)) {
      std::size_t j = i + 1;
      if (j < n && uni::is_regional_indicator(cps[j])) ++j;  // flag pair
      b.out.char_count += j - i;
      b.add_token(uni::encode_utf8(std::u32string_view(cps.data() + i, j - i)), TokenKind::Emoji);
      i = j;
      continue;
    }

    if (uni::is_emoji_base(cp)) {
      // grapheme cluster: base (modifiers)* (ZWJ base (modifiers)*)*
      std::size_t j = i + 1;
      while (j < n) {
        if (uni::is_emoji_modifier(cps[j])) {
          ++j;
        } else if (uni::is_zwj(cps[j]) && j + 1 < n && uni::is_emoji_base(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      b.out.char_count += j - i;
      b.add_token(uni::encode_utf8(std::u32string_view(cps.data() + i, j - i)), TokenKind::Emoji);
      i = j;
      continue;
    }

    if (uni::is_cjk(cp)) {
      b.out.char_count++;
      b.add_token(uni::encode_utf8(cp), TokenKind::Word);
      ++i;
      continue;
    }

    if (uni::is_word_char(cp)) {
      std::size_t j = i;
      while (j < n && uni::is_word_char(cps[j])) ++j;
      b.out.char_count += j - i;
      b.add_token(uni::encode_utf8(std::u32string_view(cps.data() + i, j - i)), TokenKind::Word);
      i = j;
      continue;
    }

    // everything else is treated as punctuation, one token per character
    b.out.char_count++;
    b.add_token(uni::encode_utf8(cp), TokenKind::Punct);
    if (is_sentence_terminator(cp)) b.close_sentence();
    ++i;
  }

  b.close_paragraph();
  if (b.out.tokens.empty()) throw InvalidArgument("empty document");
  return b.out;
}

namespace {

std::unordered_map<std::string, std::size_t> word_frequencies(const TokenizedText& t) {
  std::unordered_map<std::string, std::size_t> freq;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (t.kinds[i] == TokenKind::Word) ++freq[t.tokens[i]];
  }
  return freq;
}

}  // namespace

double type_token_ratio(const TokenizedText& t) {
  auto freq = word_frequencies(t);
  std::size_t total = 0;
  for (const auto& [w, c] : freq) total += c;
  if (total == 0) throw InvalidArgument("type_token_ratio: no word tokens");
  return static_cast<double>(freq.size()) / static_cast<double>(total);
}

double word_frequency_entropy(const TokenizedText& t) {
  auto freq = word_frequencies(t);
  if (freq.empty()) throw InvalidArgument("word_frequency_entropy: no word tokens");
  std::vector<std::size_t> counts;
  counts.reserve(freq.size());
  for (const auto& [w, c] : freq) counts.push_back(c);
  return count_entropy(counts);
}

namespace {

std::pair<double, double> length_mean_stddev(const TokenizedText& t) {
  double mu = 0.0;
  for (const Range& s : t.sentences) mu += static_cast<double>(s.size());
  mu /= static_cast<double>(t.sentences.size());
  double var = 0.0;
  for (const Range& s : t.sentences) {
    double d = static_cast<double>(s.size()) - mu;
    var += d * d;
  }
  var /= static_cast<double>(t.sentences.size());
  return {mu, std::sqrt(var)};
}

}  // namespace

double sentence_burstiness(const TokenizedText& t) {
  if (t.sentences.size() < 2) return -1.0;
  auto [mu, sigma] = length_mean_stddev(t);
  if (sigma + mu == 0.0) return -1.0;
  return (sigma - mu) / (sigma + mu);
}

double prosodic_rhythm_consistency(const TokenizedText& t) {
  if (t.sentences.size() < 2) return 1.0;
  double masd = 0.0;
  for (std::size_t i = 1; i < t.sentences.size(); ++i) {
    masd += std::abs(static_cast<double>(t.sentences[i].size()) -
                     static_cast<double>(t.sentences[i - 1].size()));
  }
  masd /= static_cast<double>(t.sentences.size() - 1);
  double mu = 0.0;
  for (const Range& s : t.sentences) mu += static_cast<double>(s.size());
  mu /= static_cast<double>(t.sentences.size());
  return 1.0 - std::min(1.0, masd / mu);
}

double phrasal_repetition_frequency(const TokenizedText& t) {
  std::vector<const std::string*> words;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (t.kinds[i] == TokenKind::Word) words.push_back(&t.tokens[i]);
  }
  if (words.size() < 2) return 0.0;
  std::unordered_map<std::string, std::size_t> bigram_count;
  for (std::size_t i = 1; i < words.size(); ++i) {
    bigram_count[*words[i - 1] + "\x1f" + *words[i]]++;
  }
  std::size_t repeated = 0, total = 0;
  for (const auto& [bg, c] : bigram_count) {
    total += c;
    if (c >= 2) repeated += c;
  }
  return static_cast<double>(repeated) / static_cast<double>(total);
}

std::pair<double, double> emoji_features(const TokenizedText& t) {
  if (t.emoji_positions.empty()) return {0.0, 0.0};
  double density =
      static_cast<double>(t.emoji_positions.size()) / static_cast<double>(t.tokens.size());
  std::vector<std::size_t> bins(3, 0);
  for (std::size_t p : t.emoji_positions) {
    std::size_t bin = std::min<std::size_t>(2, p * 3 / t.tokens.size());
    bins[bin]++;
  }
  return {density, count_entropy(bins)};
}

std::pair<double, double> punctuation_features(std::string_view text) {
  std::u32string cps = uni::decode_utf8(text);
  std::size_t visible = 0;
  std::unordered_map<char32_t, std::size_t> marks;
  for (char32_t cp : cps) {
    if (uni::is_whitespace(cp) || uni::is_format_ignorable(cp)) continue;
    ++visible;
    if (uni::is_punctuation(cp)) marks[cp]++;
  }
  if (visible == 0) throw InvalidArgument("punctuation_features: empty document");
  std::size_t punct_total = 0;
  std::vector<std::size_t> counts;
  counts.reserve(marks.size());
  for (const auto& [cp, c] : marks) {
    punct_total += c;
    counts.push_back(c);
  }
  double ratio = static_cast<double>(punct_total) / static_cast<double>(visible);
  return {ratio, count_entropy(counts)};
}

const std::vector<std::string>& default_marker_lexicon() {
  static const std::vector<std::string> kMarkers = {
      "但是", "但",   "然而", "虽然", "尽管",  "不过",    "却",       "可是",
      "反而", "即使", "固然", "只是", "话说回来", "另一方面", "however", "but",
      "although", "though", "yet", "nevertheless", "nonetheless", "whereas", "while",
      "still", "albeit", "conversely"};
  return kMarkers;
}

std::vector<std::string> load_marker_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open marker lexicon: " + path);
  std::vector<std::string> markers;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = uni::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    markers.emplace_back(sv);
  }
  return markers;
}

namespace {

bool is_ascii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

/// Non-overlapping occurrences of the marker's code point sequence within the
/// document's word stream (CJK markers span adjacent single-char tokens).
std::size_t count_cjk_marker(const std::vector<const std::string*>& words,
                             const std::u32string& marker) {
  if (marker.empty()) return 0;
  std::u32string flat;
  for (const std::string* w : words) flat += uni::decode_utf8(*w);
  std::size_t count = 0, pos = 0;
  while ((pos = flat.find(marker, pos)) != std::u32string::npos) {
    ++count;
    pos += marker.size();
  }
  return count;
}

}  // namespace

CohesionFeatures cohesion_features(const TokenizedText& t,
                                   const std::vector<std::string>& markers) {
  CohesionFeatures out;

  // adjacent sentence overlap: mean Jaccard of consecutive word sets
  if (t.sentences.size() >= 2) {
    std::vector<std::unordered_set<std::string>> sets(t.sentences.size());
    for (std::size_t si = 0; si < t.sentences.size(); ++si) {
      for (std::size_t i = t.sentences[si].begin; i < t.sentences[si].end; ++i) {
        if (t.kinds[i] == TokenKind::Word) sets[si].insert(t.tokens[i]);
      }
    }
    double sum = 0.0;
    for (std::size_t si = 1; si < sets.size(); ++si) {
      const auto& a = sets[si - 1];
      const auto& b = sets[si];
      std::size_t inter = 0;
      for (const auto& w : a) {
        if (b.count(w)) ++inter;
      }
      std::size_t uni_size = a.size() + b.size() - inter;
      sum += uni_size == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni_size);
    }
    out.adjacent_overlap = sum / static_cast<double>(sets.size() - 1);
  }

  // paragraph length variation: coefficient of variation, population sigma
  if (t.paragraphs.size() >= 2) {
    double mu = 0.0;
    for (const Range& p : t.paragraphs) mu += static_cast<double>(p.size());
    mu /= static_cast<double>(t.paragraphs.size());
    double var = 0.0;
    for (const Range& p : t.paragraphs) {
      double d = static_cast<double>(p.size()) - mu;
      var += d * d;
    }
    var /= static_cast<double>(t.paragraphs.size());
    out.paragraph_length_variation = mu > 0.0 ? std::sqrt(var) / mu : 0.0;
  }

  // hapax ratio
  auto freq = word_frequencies(t);
  if (!freq.empty()) {
    std::size_t once = 0;
    for (const auto& [w, c] : freq) {
      if (c == 1) ++once;
    }
    out.hapax_ratio = static_cast<double>(once) / static_cast<double>(freq.size());
  }

  // concessive markers per sentence: ASCII markers match word tokens
  // case-insensitively, CJK markers match as contiguous character runs
  if (!t.sentences.empty()) {
    std::vector<const std::string*> words;
    std::vector<std::string> lowered;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
      if (t.kinds[i] == TokenKind::Word) {
        words.push_back(&t.tokens[i]);
        lowered.push_back(to_lower_ascii(t.tokens[i]));
      }
    }
    std::size_t matches = 0;
    for (const std::string& m : markers) {
      if (is_ascii(m)) {
        std::string lm = to_lower_ascii(m);
        for (const std::string& w : lowered) {
          if (w == lm) ++matches;
        }
      } else {
        matches += count_cjk_marker(words, uni::decode_utf8(m));
      }
    }
    out.concessive_marker_ratio =
        static_cast<double>(matches) / static_cast<double>(t.sentences.size());
  }

  return out;
}

StatFeatures stat_features(std::string_view text, const std::vector<std::string>& markers) {
  TokenizedText t = tokenize(text);
  StatFeatures f;

  if (t.word_count() > 0) {
    f.type_token_ratio = type_token_ratio(t);
    f.word_frequency_entropy = word_frequency_entropy(t);
  }
  f.sentence_burstiness = sentence_burstiness(t);
  f.prosodic_rhythm_consistency = prosodic_rhythm_consistency(t);
  f.phrasal_repetition_frequency = phrasal_repetition_frequency(t);
  auto [density, pos_entropy] = emoji_features(t);
  f.emoji_density = density;
  f.emoji_position_entropy = pos_entropy;
  auto [pratio, pdiv] = punctuation_features(text);
  f.punctuation_ratio = pratio;
  f.punctuation_diversity = pdiv;
  CohesionFeatures c = cohesion_features(t, markers);
  f.adjacent_sentence_overlap = c.adjacent_overlap;
  f.paragraph_length_variation = c.paragraph_length_variation;
  f.hapax_ratio = c.hapax_ratio;
  f.concessive_marker_ratio = c.concessive_marker_ratio;
  return f;
}

}  // namespace plad::textstats
