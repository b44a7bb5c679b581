#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plad::corpus {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class Domain {
  Career,
  Wellness,
  Travel,
  Health,
  Food,
  Pets,
  Education,
  Sports,
  Fashion,
  Relationships,
};

inline constexpr int kDomainCount = 10;

const char* domain_name(Domain d);
std::optional<Domain> domain_from_name(const std::string& name);

struct Authorship {
  enum class Kind { Human, AI, Unlabeled };
  Kind kind = Kind::Unlabeled;
  std::string provider;  // AI only, non-empty
  std::string model;     // AI only, non-empty

  static Authorship human() { return {Kind::Human, "", ""}; }
  static Authorship ai(std::string provider, std::string model) {
    return {Kind::AI, std::move(provider), std::move(model)};
  }
  static Authorship unlabeled() { return {Kind::Unlabeled, "", ""}; }

  bool is_labeled() const { return kind != Kind::Unlabeled; }
  bool operator==(const Authorship&) const = default;

  /// Most specific class label: "human", "ai:<provider>/<model>" or "unlabeled".
  std::string label() const;
};

struct Post {
  std::string id;
  std::string title;
  std::string content;
  std::vector<std::string> tags;
  std::int64_t timestamp = 0;  // unix seconds, UTC
  std::int64_t likes = 0;
  std::int64_t comments = 0;
  std::int64_t collections = 0;
  Domain domain = Domain::Career;
  std::optional<std::string> author_id;
  Authorship authorship;

  bool operator==(const Post&) const = default;
};

/// Validates invariants (non-empty content, counts >= 0, timestamp in
/// [2020-01-01, now]). Returns an error message or empty string if valid.
std::string validate_post(const Post& post, std::int64_t now_unix_seconds);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> exploration;
};

/// Provider -> allowed model names. Loaded from JSON {"provider": ["model", ...]}.
using ProviderRegistry = std::map<std::string, std::vector<std::string>>;

ProviderRegistry load_provider_registry(const std::string& path);

// ---------------------------------------------------------------------------
// JSONL ingestion
// ---------------------------------------------------------------------------

struct LoadError {
  int line = 0;  // 1-based
  std::string message;
};

struct LoadReport {
  std::vector<Post> posts;
  std::vector<LoadError> errors;
};

/// One JSON object per line. Invalid lines are recorded and skipped; an
/// unreadable file throws IoError. When a registry is given, AI posts with an
/// unknown provider/model are schema errors.
LoadReport load_jsonl(const std::string& path, const ProviderRegistry* registry = nullptr);

void save_jsonl(const std::vector<Post>& posts, const std::string& path);

std::string post_to_json(const Post& post);

/// Parses one JSONL line; throws SchemaError/InvalidArgument on violation.
Post post_from_json(const std::string& line, std::int64_t now_unix_seconds,
                    const ProviderRegistry* registry = nullptr);

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

/// Default cutoff 2022-11-30T23:59:59Z; the boundary instant itself lands on
/// the pre side.
inline constexpr std::int64_t kDefaultPeriodCutoff = 1669852799;

struct PeriodSplit {
  std::vector<Post> pre_llm;
  std::vector<Post> post_llm;
};

PeriodSplit split_by_period(const std::vector<Post>& posts,
                            std::int64_t cutoff = kDefaultPeriodCutoff);

/// Stratifies by the most specific authorship label. Per-label train share
/// matches `ratio` within one sample; deterministic for a fixed seed.
/// Throws InvalidArgument if any post is unlabeled (those belong in the
/// exploration set) or ratio is outside (0,1).
DatasetSplit stratified_split(const std::vector<Post>& posts, double ratio, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct DomainSummary {
  Domain domain;
  std::size_t count = 0;
  double mean_length = 0.0;  // content length in code points
  double mean_likes = 0.0;
  double mean_comments = 0.0;
  double mean_collections = 0.0;
};

/// One row per domain present in the input, in Domain enum order.
std::vector<DomainSummary> summarize(const std::vector<Post>& posts);

// ---------------------------------------------------------------------------
// Synthetic corpus generation
// ---------------------------------------------------------------------------

/// Per-class style knobs. Human-like classes get high sentence-length
/// dispersion and disfluencies; AI-like classes get uniform rhythm and a
/// flatter, wider sampling vocabulary.
struct StyleKnobs {
  double sentence_len_mean = 12.0;
  double sentence_len_spread = 0.1;  // lognormal sigma of sentence length
  int sentences_mean = 8;
  int vocab_size = 500;
  double zipf_exponent = 0.8;       // higher = more repetition = lower TTR
  double emoji_rate = 0.04;         // per-token
  double disfluency_rate = 0.0;     // per-sentence
  double first_person_rate = 0.1;   // per-sentence
  double second_person_rate = 0.05; // per-sentence
  double exclaim_rate = 0.15;       // sentence ends with ！
  double question_rate = 0.05;      // sentence ends with ？
  double connective_rate = 0.1;     // sentence opens with a contrastive link
  double sensory_rate = 0.05;       // per-sentence sensory lexicon insertion
  double temporal_rate = 0.05;      // per-sentence temporal marker insertion
  double hedge_rate = 0.03;         // per-sentence hedge insertion
  double interjection_rate = 0.0;   // per-sentence trailing interjection
  int vocab_offset = 0;             // rotates the shared vocabulary (family signature)
  std::vector<std::string> signature_tokens;  // injected catchphrases
  double signature_rate = 0.0;                // per-sentence
  double engagement_mu = 3.0;
  double engagement_sigma = 1.4;
  double engagement_scale = 1.0;
};

struct ClassSpec {
  Authorship authorship;      // Human, AI(provider, model) or Unlabeled
  std::size_t count = 0;
  StyleKnobs style;
  std::string date_from = "2023-01-01";
  std::string date_to = "2025-07-31";
  int date_skew = 0;          // -1 early-heavy, 0 uniform, +1 late-heavy
};

struct GeneratorConfig {
  std::vector<ClassSpec> classes;
  int author_pool = 40;  // shared author pool; AI-heavy posts skew to high-propensity authors
};

GeneratorConfig load_generator_config(const std::string& path);

/// Deterministic for a fixed (config, seed): two runs produce byte-identical
/// corpora.
std::vector<Post> synthesize_corpus(const GeneratorConfig& config, std::uint64_t seed);

/// Built-in fixtures.
GeneratorConfig default_fixture(std::size_t human_count = 1000, std::size_t ai_count = 1000);
/// Classes differ only in lexical-dimension style (vocabulary, rhythm,
/// burstiness); emotional/social/engagement knobs are identical.
GeneratorConfig lexical_signal_fixture(std::size_t per_class = 500);
/// K providers x 2 models; models inherit a strong per-provider signature
/// with small per-model tweaks.
GeneratorConfig provider_family_fixture(std::size_t per_model = 150);
/// Unlabeled exploration-style posts whose underlying AI share ramps up over
/// `days` days; for temporal/engagement walkthroughs.
GeneratorConfig exploration_fixture(std::size_t count = 1200, int days = 600);

}  // namespace plad::corpus
