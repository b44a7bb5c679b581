#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plad::textstats {

enum class TokenKind { Word, Punct, Emoji };

struct Range {
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::size_t size() const { return end - begin; }
};

/// Tokenized document. Sentence ranges tile [0, tokens.size()) and paragraph
/// ranges tile the sentence indices.
struct TokenizedText {
  std::vector<std::string> tokens;
  std::vector<TokenKind> kinds;
  std::vector<Range> sentences;   // token-index ranges
  std::vector<Range> paragraphs;  // sentence-index ranges
  std::size_t char_count = 0;     // non-whitespace code points
  std::vector<std::size_t> emoji_positions;

  std::size_t word_count() const;
};

/// Character-level CJK tokenization: one token per ideograph, contiguous
/// Latin letters/digits form one token, one token per emoji grapheme
/// cluster. Sentences split on 。！？!?.; and newline, terminator attached to
/// the preceding sentence; paragraphs split on blank lines.
/// Throws InvalidArgument on empty/whitespace-only input.
TokenizedText tokenize(std::string_view text);

// --- individual extractors (preconditions as documented) -------------------

/// distinct word tokens / word tokens. Throws if there are no word tokens.
double type_token_ratio(const TokenizedText& t);

/// Shannon entropy (bits) of the word-token frequency distribution.
/// Throws if there are no word tokens.
double word_frequency_entropy(const TokenizedText& t);

/// (sigma - mu) / (sigma + mu) over sentence lengths in tokens, population
/// sigma. Fewer than 2 sentences: -1 (degenerate regularity).
double sentence_burstiness(const TokenizedText& t);

/// 1 - min(1, MASD/mu) where MASD is the mean absolute difference of
/// consecutive sentence lengths. Fewer than 2 sentences: 1.
double prosodic_rhythm_consistency(const TokenizedText& t);

/// Fraction of word-token bigram instances whose bigram occurs at least
/// twice in the document. Fewer than 2 word tokens: 0.
double phrasal_repetition_frequency(const TokenizedText& t);

/// density = emoji tokens / all tokens; position entropy (bits) of emoji
/// counts binned into document terciles by token index. No emoji: (0, 0).
std::pair<double, double> emoji_features(const TokenizedText& t);

/// ratio = punctuation chars / non-whitespace chars; diversity = Shannon
/// entropy (bits) over the punctuation-mark distribution. Operates on raw
/// text. Throws on input with no non-whitespace characters.
std::pair<double, double> punctuation_features(std::string_view text);

struct CohesionFeatures {
  double adjacent_overlap = 0.0;           // mean Jaccard of consecutive sentences' word sets
  double paragraph_length_variation = 0.0; // CV of paragraph lengths in sentences
  double hapax_ratio = 0.0;                // words occurring once / distinct words
  double concessive_marker_ratio = 0.0;    // lexicon matches per sentence
};

/// Concessive/contrastive markers; one marker per line, UTF-8, '#' comments.
std::vector<std::string> load_marker_lexicon(const std::string& path);
const std::vector<std::string>& default_marker_lexicon();

CohesionFeatures cohesion_features(const TokenizedText& t,
                                   const std::vector<std::string>& markers = default_marker_lexicon());

// --- aggregate --------------------------------------------------------------

/// The 13 statistical features. Field order matches the feature registry.
struct StatFeatures {
  double type_token_ratio = 0.0;
  double word_frequency_entropy = 0.0;
  double hapax_ratio = 0.0;
  double sentence_burstiness = -1.0;
  double prosodic_rhythm_consistency = 1.0;
  double phrasal_repetition_frequency = 0.0;
  double emoji_density = 0.0;
  double emoji_position_entropy = 0.0;
  double punctuation_ratio = 0.0;
  double punctuation_diversity = 0.0;
  double adjacent_sentence_overlap = 0.0;
  double paragraph_length_variation = 0.0;
  double concessive_marker_ratio = 0.0;
};

/// Computes every statistical feature. Degenerate documents (no word tokens,
/// no emoji, single sentence) take the pinned neutral values above instead of
/// erroring, so downstream feature vectors never contain holes.
StatFeatures stat_features(std::string_view text,
                           const std::vector<std::string>& markers = default_marker_lexicon());

}  // namespace plad::textstats
