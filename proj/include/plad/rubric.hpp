#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace plad::rubric {

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

enum class Dimension { Emotional, Cognitive, Lexical, Cohesion };
inline constexpr int kDimensionCount = 4;

const char* dimension_name(Dimension d);
std::optional<Dimension> dimension_from_name(const std::string& name);

struct RubricCriterion {
  std::string id;
  Dimension dimension = Dimension::Emotional;
  std::string name;
  std::string description;
  std::map<int, std::string> level_anchors;  // at least levels 0, 5, 10
  int scale_min = 0;
  int scale_max = 10;
};

inline constexpr char kRubricVersion[] = "plad-rubric-v1";

/// The 18 judged criteria: Emotional 6, Cognitive 6, Lexical 3, Cohesion 3.
const std::vector<RubricCriterion>& default_rubric_set();

struct RubricSet {
  std::string version;
  std::vector<RubricCriterion> criteria;
};

RubricSet default_rubric();

/// Throws SchemaError on duplicate ids, missing 0/5/10 anchors or a scale
/// other than a sub-range of [0,10].
void validate_rubric_set(const RubricSet& set);

void save_rubric_set(const RubricSet& set, const std::string& path);
RubricSet load_rubric_set(const std::string& path);

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

struct RubricScore {
  std::string criterion_id;
  int raw_score = 0;             // integer in [0,10]
  double normalized = 0.0;       // raw_score / 10
  std::string rationale;
  bool verified = false;
  int verification_delta = 0;    // |initial - rederived| when verification ran
  bool clamped = false;          // raw value fell outside the scale
};

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

/// Chat-completion abstraction: (prompt, temperature, seed) -> response text.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  /// Stable identity string, part of the cache key.
  virtual std::string id() const = 0;
  virtual std::string complete(const std::string& prompt, double temperature,
                               std::uint64_t seed) = 0;
};

/// Deterministic offline judge: scores are countable lexical proxies of the
/// prompt-embedded text plus seeded +-1 noise on the initial pass. Pure
/// function of (prompt, seed).
class MockBackend : public ChatBackend {
 public:
  std::string id() const override { return "mock:lexicon-proxy-v1"; }
  std::string complete(const std::string& prompt, double temperature,
                       std::uint64_t seed) override;
};

struct HttpBackendConfig {
  std::string base_url;               // e.g. "https://api.example.com"
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "PLAD_API_KEY";
  int timeout_seconds = 60;
};

/// Remote chat-completion endpoint speaking the usual messages schema.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string id() const override;
  std::string complete(const std::string& prompt, double temperature,
                       std::uint64_t seed) override;

 private:
  HttpBackendConfig config_;
};

/// Token-bucket limiter; rpm <= 0 means unlimited. acquire() blocks until a
/// slot is free. Thread-safe.
class RateLimiter {
 public:
  explicit RateLimiter(int requests_per_minute);
  void acquire();

 private:
  int rpm_;
  std::mutex mu_;
  std::int64_t next_slot_us_ = 0;
};

// ---------------------------------------------------------------------------
// Prompting and parsing
// ---------------------------------------------------------------------------

/// Sentinels bounding the verbatim document inside prompts.
inline constexpr char kTextOpen[] = "<<<PLAD:TEXT>>>";
inline constexpr char kTextClose[] = "<<<PLAD:END>>>";

std::string build_scoring_prompt(const std::string& text,
                                 const std::vector<RubricCriterion>& criteria);

/// Chain-of-thought re-derivation prompt carrying the initial scores.
std::string build_verification_prompt(const std::string& text,
                                      const std::vector<RubricCriterion>& criteria,
                                      const std::vector<RubricScore>& initial);

/// Extracts the first balanced JSON object from `response` and reads one
/// integer score per expected id plus an optional shared "rationale".
/// Out-of-range values are clamped and flagged. Missing ids or unparseable
/// JSON throw RetryableParseError.
std::vector<RubricScore> parse_scores(const std::string& response,
                                      const std::vector<std::string>& expected_ids);

/// Second-pass CoT verification; where |initial - rederived| > 2 the
/// rederived score wins. On backend failure the initial scores come back
/// with verified=false.
std::vector<RubricScore> verify_scores(const std::string& text,
                                       const std::vector<RubricCriterion>& criteria,
                                       const std::vector<RubricScore>& initial,
                                       ChatBackend& backend, double temperature = 0.0,
                                       std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Cache and pipeline
// ---------------------------------------------------------------------------

/// Content-addressed score cache: one JSON file per key under `dir`.
/// Readers take no lock; writers serialize and publish via atomic rename.
class ScoreCache {
 public:
  explicit ScoreCache(std::string dir);

  static std::string key(const std::string& text, const std::string& rubric_version,
                         const std::string& backend_id);

  std::optional<std::vector<RubricScore>> get(const std::string& key) const;
  void put(const std::string& key, const std::vector<RubricScore>& scores);

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::mutex write_mu_;
};

struct ScoreOptions {
  double temperature = 0.0;
  std::uint64_t seed = 0;
  int max_attempts = 3;
  bool verify = true;
};

struct ScoreStats {
  int backend_calls = 0;
  int cache_hits = 0;
};

/// prompt -> parse (with retries) -> verify -> normalize, cached under
/// key(text, rubric version, backend id). Throws ScoringFailed when every
/// attempt is exhausted; never emits a partial score set.
std::vector<RubricScore> score_text(const std::string& text, const RubricSet& rubric,
                                    ChatBackend& backend, ScoreCache* cache = nullptr,
                                    const ScoreOptions& options = {},
                                    ScoreStats* stats = nullptr);

}  // namespace plad::rubric
