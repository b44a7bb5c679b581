#include "plad/rubric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "plad/error.hpp"
#include "plad/lexicons.hpp"
#include "plad/rng.hpp"
#include "plad/textstats.hpp"
#include "plad/unicode.hpp"

namespace plad::rubric {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Emotional:
      return "Emotional";
    case Dimension::Cognitive:
      return "Cognitive";
    case Dimension::Lexical:
      return "Lexical";
    case Dimension::Cohesion:
      return "Cohesion";
  }
  return "Emotional";
}

std::optional<Dimension> dimension_from_name(const std::string& name) {
  for (int i = 0; i < kDimensionCount; ++i) {
    auto d = static_cast<Dimension>(i);
    if (name == dimension_name(d)) return d;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Default criteria
// ---------------------------------------------------------------------------

namespace {

RubricCriterion make_criterion(const char* id, Dimension dim, const char* name,
                               const char* description, const char* a0, const char* a5,
                               const char* a10) {
  RubricCriterion c;
  c.id = id;
  c.dimension = dim;
  c.name = name;
  c.description = description;
  c.level_anchors = {{0, a0}, {5, a5}, {10, a10}};
  return c;
}

}  // namespace

const std::vector<RubricCriterion>& default_rubric_set() {
  static const std::vector<RubricCriterion> kCriteria = {
      // Emotional
      make_criterion("emotional_intensity", Dimension::Emotional, "Emotional Intensity",
                     "Strength and variability of expressed affect.",
                     "Flat reporting with no feeling words.",
                     "Occasional feeling words without buildup or contrast.",
                     "Vivid, fluctuating affect that shapes the whole piece."),
      make_criterion("sensory_detail_richness", Dimension::Emotional, "Sensory Detail Richness",
                     "Concrete sight, sound, smell, taste and touch detail.",
                     "No sensory grounding; purely abstract statements.",
                     "A few generic sensory mentions.",
                     "Layered, specific sensory detail across several senses."),
      make_criterion("personal_grounding", Dimension::Emotional, "Personal Grounding",
                     "Anchoring of claims in first-person lived experience.",
                     "No first-person perspective at all.",
                     "First person appears but stays generic.",
                     "Dense, specific first-person experience drives the text."),
      make_criterion("social_connection", Dimension::Emotional, "Social Connection",
                     "Orientation toward a concrete audience or community.",
                     "Addresses nobody; no social references.",
                     "Occasional reader address or group mention.",
                     "Sustained, direct engagement with a named audience."),
      make_criterion("empathetic_engagement", Dimension::Emotional, "Empathetic Engagement",
                     "Acknowledgement of other people's feelings and situations.",
                     "No recognition of others' inner states.",
                     "Brief, formulaic sympathy.",
                     "Specific, reciprocal attention to others' feelings."),
      make_criterion("interactive_dialogic_stance", Dimension::Emotional,
                     "Interactive and Dialogic Stance",
                     "Questions, invitations and turn-taking aimed at the reader.",
                     "Monologue; no reader involvement.",
                     "A closing question or single aside.",
                     "Frequent genuine questions and back-and-forth framing."),
      // Cognitive
      make_criterion("perspectival_complexity", Dimension::Cognitive, "Perspectival Complexity",
                     "Movement between multiple viewpoints on the same matter.",
                     "Single fixed viewpoint throughout.",
                     "One alternative view mentioned then dropped.",
                     "Several perspectives held and weighed against each other."),
      make_criterion("dialectical_reasoning", Dimension::Cognitive, "Dialectical Reasoning",
                     "Explicit tension between claims and counter-claims.",
                     "Assertions only; nothing is contested.",
                     "A single but/however turn.",
                     "Sustained thesis-antithesis movement reaching a synthesis."),
      make_criterion("temporal_coherence", Dimension::Cognitive, "Temporal Coherence",
                     "Consistent, navigable ordering of events in time.",
                     "No temporal structure; events float freely.",
                     "Some time markers, occasionally confusing.",
                     "Clear timeline with deliberate flashback or flash-forward."),
      make_criterion("ambiguity_tolerance", Dimension::Cognitive, "Tolerance for Ambiguity",
                     "Willingness to leave questions open and hedge claims.",
                     "Everything stated with absolute certainty.",
                     "Some hedging on minor points.",
                     "Open questions and calibrated uncertainty carried to the end."),
      make_criterion("axiological_coherence", Dimension::Cognitive, "Axiological Coherence",
                     "Stable underlying values connecting the judgements made.",
                     "Value judgements absent or contradictory.",
                     "Values implied but not connected.",
                     "A consistent value system visibly organizes the judgements."),
      make_criterion("narrative_structure", Dimension::Cognitive, "Narrative Structure",
                     "Recognizable arc: setup, development, resolution.",
                     "No arc; a list of statements.",
                     "Partial arc with a weak or missing resolution.",
                     "Complete, deliberately paced arc."),
      // Lexical
      make_criterion("imperfection", Dimension::Lexical, "Imperfection",
                     "Freedom from hesitations, fillers and self-corrections.",
                     "Constant fillers and restarts.",
                     "A few hesitations or corrections.",
                     "Polished and fluent; no disfluencies at all."),
      make_criterion("lexical_stylistic_personalization", Dimension::Lexical,
                     "Lexical and Stylistic Personalization",
                     "Idiosyncratic word choice, catchphrases and expressive marks.",
                     "Generic register; interchangeable with any author.",
                     "Occasional personal flourish.",
                     "Unmistakably personal voice with recurring signatures."),
      make_criterion("stylistic_consistency", Dimension::Lexical, "Stylistic Consistency",
                     "Uniformity of register and rhythm across the text.",
                     "Register and rhythm lurch between sentences.",
                     "Mostly consistent with noticeable drift.",
                     "Even, controlled style from start to finish."),
      // Cohesion
      make_criterion("semantic_progression", Dimension::Cohesion, "Semantic Progression",
                     "Each sentence advances from the previous one's content.",
                     "Sentences unrelated to their neighbours.",
                     "Loose topical drift with jumps.",
                     "Tight given-new chaining from sentence to sentence."),
      make_criterion("referential_chain_adaptivity", Dimension::Cohesion,
                     "Adaptive Referential Chains",
                     "Flexible pronoun and demonstrative reference tracking.",
                     "Referents repeated verbatim or left dangling.",
                     "Basic pronoun use with occasional ambiguity.",
                     "Varied, unambiguous reference woven through the text."),
      make_criterion("strategic_repetition", Dimension::Cohesion, "Strategic Repetition",
                     "Repetition deployed for emphasis or clarification.",
                     "No repetition, or accidental echo only.",
                     "Some repetition, unclear whether deliberate.",
                     "Patterned repetition that audibly structures the message."),
  };
  return kCriteria;
}

RubricSet default_rubric() { return {kRubricVersion, default_rubric_set()}; }

void validate_rubric_set(const RubricSet& set) {
  if (set.version.empty()) throw SchemaError("rubric set has no version");
  if (set.criteria.empty()) throw SchemaError("rubric set has no criteria");
  std::vector<std::string> ids;
  for (const RubricCriterion& c : set.criteria) {
    if (c.id.empty()) throw SchemaError("criterion with empty id");
    if (std::find(ids.begin(), ids.end(), c.id) != ids.end())
      throw SchemaError("duplicate criterion id \"" + c.id + "\"");
    ids.push_back(c.id);
    for (int level : {0, 5, 10}) {
      if (!c.level_anchors.count(level))
        throw SchemaError("criterion \"" + c.id + "\" missing anchor for level " +
                          std::to_string(level));
    }
    if (c.scale_min != 0 || c.scale_max != 10)
      throw SchemaError("criterion \"" + c.id + "\" must use the 0..10 scale");
  }
}

void save_rubric_set(const RubricSet& set, const std::string& path) {
  validate_rubric_set(set);
  json j;
  j["version"] = set.version;
  json arr = json::array();
  for (const RubricCriterion& c : set.criteria) {
    json cj;
    cj["id"] = c.id;
    cj["dimension"] = dimension_name(c.dimension);
    cj["name"] = c.name;
    cj["description"] = c.description;
    json anchors;
    for (const auto& [level, text] : c.level_anchors) anchors[std::to_string(level)] = text;
    cj["level_anchors"] = anchors;
    cj["scale"] = {c.scale_min, c.scale_max};
    arr.push_back(cj);
  }
  j["criteria"] = arr;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

RubricSet load_rubric_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError("rubric set must be a JSON object");
  RubricSet set;
  if (!j.contains("version") || !j["version"].is_string())
    throw SchemaError("rubric set missing string \"version\"");
  set.version = j["version"].get<std::string>();
  if (!j.contains("criteria") || !j["criteria"].is_array())
    throw SchemaError("rubric set missing \"criteria\" array");
  for (const json& cj : j["criteria"]) {
    RubricCriterion c;
    if (!cj.contains("id") || !cj["id"].is_string())
      throw SchemaError("criterion missing string \"id\"");
    c.id = cj["id"].get<std::string>();
    auto dim = cj.contains("dimension") && cj["dimension"].is_string()
                   ? dimension_from_name(cj["dimension"].get<std::string>())
                   : std::nullopt;
    if (!dim) throw SchemaError("criterion \"" + c.id + "\" has an unknown dimension");
    c.dimension = *dim;
    c.name = cj.value("name", c.id);
    c.description = cj.value("description", "");
    if (cj.contains("level_anchors") && cj["level_anchors"].is_object()) {
      for (auto it = cj["level_anchors"].begin(); it != cj["level_anchors"].end(); ++it) {
        if (!it.value().is_string())
          throw SchemaError("criterion \"" + c.id + "\" has a non-string anchor");
        c.level_anchors[std::stoi(it.key())] = it.value().get<std::string>();
      }
    }
    if (cj.contains("scale")) {
      if (!cj["scale"].is_array() || cj["scale"].size() != 2)
        throw SchemaError("criterion \"" + c.id + "\" scale must be [min, max]");
      c.scale_min = cj["scale"][0].get<int>();
      c.scale_max = cj["scale"][1].get<int>();
    }
    set.criteria.push_back(std::move(c));
  }
  validate_rubric_set(set);
  return set;
}

// ---------------------------------------------------------------------------
// Prompts
// ---------------------------------------------------------------------------

std::string build_scoring_prompt(const std::string& text,
                                 const std::vector<RubricCriterion>& criteria) {
  if (criteria.empty()) throw InvalidArgument("no criteria to score");
  if (text.empty()) throw InvalidArgument("no text to score");

  std::string p;
  p += "You are a psycholinguistic rater. Score the document below on each "
       "criterion using its anchored 0-10 scale.\n\n";
  p += kTextOpen;
  p += "\n";
  p += text;
  p += "\n";
  p += kTextClose;
  p += "\n\n";
  for (const RubricCriterion& c : criteria) {
    p += "[criterion id=" + c.id + " dimension=" + dimension_name(c.dimension) + "]\n";
    p += c.name + ": " + c.description + "\n";
    for (const auto& [level, anchor] : c.level_anchors)
      p += "  " + std::to_string(level) + ": " + anchor + "\n";
  }
  p += "\nRespond with exactly one JSON object mapping every criterion id to an "
       "integer 0-10, plus a \"rationale\" string. No other keys, no prose "
       "outside the object.\n";
  return p;
}

std::string build_verification_prompt(const std::string& text,
                                      const std::vector<RubricCriterion>& criteria,
                                      const std::vector<RubricScore>& initial) {
  std::string p;
  p += "Re-derive every score below step by step before answering. For each "
       "criterion, reason from concrete evidence in the document, then state "
       "your own score. Do not assume the previous scores are correct.\n\n";
  p += "Previous scores:\n";
  for (const RubricScore& s : initial)
    p += "  " + s.criterion_id + ": " + std::to_string(s.raw_score) + "\n";
  p += "\n";
  p += build_scoring_prompt(text, criteria);
  return p;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

/// First balanced top-level JSON object in `s`, brace-matched with string
/// awareness.
std::optional<std::string> first_json_object(const std::string& s) {
  std::size_t start = s.find('{');
  while (start != std::string::npos) {
    int depth = 0;
    bool in_string = false, escaped = false;
    for (std::size_t i = start; i < s.size(); ++i) {
      char c = s[i];
      if (in_string) {
        if (escaped)
          escaped = false;
        else if (c == '\\')
          escaped = true;
        else if (c == '"')
          in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) return s.substr(start, i - start + 1);
      }
    }
    start = s.find('{', start + 1);
  }
  return std::nullopt;
}

}  // namespace

std::vector<RubricScore> parse_scores(const std::string& response,
                                      const std::vector<std::string>& expected_ids) {
  auto body = first_json_object(response);
  if (!body) throw RetryableParseError("response contains no JSON object");
  json j = json::parse(*body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw RetryableParseError("response JSON does not parse");

  std::string rationale;
  if (j.contains("rationale") && j["rationale"].is_string())
    rationale = j["rationale"].get<std::string>();

  std::vector<RubricScore> scores;
  scores.reserve(expected_ids.size());
  for (const std::string& id : expected_ids) {
    if (!j.contains(id)) throw RetryableParseError("response missing criterion \"" + id + "\"");
    const json& v = j[id];
    if (!v.is_number())
      throw RetryableParseError("criterion \"" + id + "\" is not a number");
    auto raw = static_cast<long long>(std::llround(v.get<double>()));
    RubricScore s;
    s.criterion_id = id;
    s.clamped = raw < 0 || raw > 10;
    s.raw_score = static_cast<int>(std::clamp(raw, 0ll, 10ll));
    s.normalized = s.raw_score / 10.0;
    s.rationale = rationale;
    scores.push_back(std::move(s));
  }
  return scores;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

std::vector<RubricScore> verify_scores(const std::string& text,
                                       const std::vector<RubricCriterion>& criteria,
                                       const std::vector<RubricScore>& initial,
                                       ChatBackend& backend, double temperature,
                                       std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const RubricScore& s : initial) ids.push_back(s.criterion_id);
  const std::string prompt = build_verification_prompt(text, criteria, initial);

  std::vector<RubricScore> rederived;
  bool ok = false;
  for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
    try {
      std::string response = backend.complete(
          prompt, temperature, rng::derive_seed(seed, "verify:" + std::to_string(attempt)));
      rederived = parse_scores(response, ids);
      ok = true;
    } catch (const std::exception&) {
      // retry; unreachable backend or unparseable reply
    }
  }

  std::vector<RubricScore> out = initial;
  if (!ok) {
    for (RubricScore& s : out) {
      s.verified = false;
      s.verification_delta = 0;
    }
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    int delta = std::abs(out[i].raw_score - rederived[i].raw_score);
    if (delta > 2) {
      out[i].raw_score = rederived[i].raw_score;
      out[i].normalized = rederived[i].normalized;
      out[i].clamped = out[i].clamped || rederived[i].clamped;
      if (!rederived[i].rationale.empty()) out[i].rationale = rederived[i].rationale;
    }
    out[i].verified = true;
    out[i].verification_delta = delta;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mock backend
// ---------------------------------------------------------------------------

namespace {

std::string lower_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

bool pure_ascii(const std::string& s) {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

/// Countable surface profile of a document; every proxy the mock judge uses.
struct TextProfile {
  double sentences = 1.0;
  std::vector<std::string> lowered_words;
  std::u32string flat;  // word tokens, concatenated
  double rhythm = 1.0;
  double overlap = 0.0;
  double phrasal = 0.0;
  double emoji = 0.0;
  double exclaims = 0.0;
  double questions = 0.0;

  explicit TextProfile(const std::string& text) {
    textstats::TokenizedText t;
    try {
      t = textstats::tokenize(text);
    } catch (const std::exception&) {
      return;  // untokenizable: flat mid-scale profile
    }
    sentences = static_cast<double>(t.sentences.size());
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
      if (t.kinds[i] == textstats::TokenKind::Word) {
        lowered_words.push_back(lower_ascii(t.tokens[i]));
        flat += unicode::decode_utf8(t.tokens[i]);
      }
    }
    rhythm = textstats::prosodic_rhythm_consistency(t);
    auto coh = textstats::cohesion_features(t);
    overlap = coh.adjacent_overlap;
    phrasal = textstats::phrasal_repetition_frequency(t);
    emoji = static_cast<double>(t.emoji_positions.size());
    for (char32_t cp : unicode::decode_utf8(text)) {
      if (cp == U'!' || cp == U'！') exclaims += 1.0;
      if (cp == U'?' || cp == U'？') questions += 1.0;
    }
  }

  double count(const std::vector<std::string>& lexicon) const {
    double n = 0;
    for (const std::string& entry : lexicon) {
      if (pure_ascii(entry)) {
        std::string needle = lower_ascii(entry);
        for (const std::string& w : lowered_words)
          if (w == needle) n += 1.0;
      } else {
        std::u32string needle = unicode::decode_utf8(entry);
        std::size_t pos = 0;
        while ((pos = flat.find(needle, pos)) != std::u32string::npos) {
          n += 1.0;
          pos += needle.size();
        }
      }
    }
    return n;
  }

  double rate(const std::vector<std::string>& lexicon) const { return count(lexicon) / sentences; }
};

int scale01(double value) {
  return static_cast<int>(std::clamp(std::llround(value), 0ll, 10ll));
}

int proxy_score(const TextProfile& p, const std::string& id) {
  namespace lex = plad::lexicons;
  if (id == "emotional_intensity")
    return scale01((p.rate(lex::emotive()) + p.exclaims / p.sentences) * 6.0);
  if (id == "sensory_detail_richness") return scale01(p.rate(lex::sensory()) * 8.0);
  if (id == "personal_grounding") return scale01(p.rate(lex::first_person()) * 7.0);
  if (id == "social_connection")
    return scale01((p.rate(lex::second_person()) + p.rate(lex::greeting())) * 7.0);
  if (id == "empathetic_engagement") return scale01(p.rate(lex::empathy()) * 9.0);
  if (id == "interactive_dialogic_stance")
    return scale01((p.questions / p.sentences + p.rate(lex::second_person())) * 6.0);
  if (id == "perspectival_complexity") return scale01(p.rate(lex::perspective()) * 9.0);
  if (id == "dialectical_reasoning") return scale01(p.rate(lex::connective()) * 7.0);
  if (id == "temporal_coherence") return scale01(p.rate(lex::temporal()) * 7.0);
  if (id == "ambiguity_tolerance") return scale01(p.rate(lex::hedge()) * 9.0);
  if (id == "axiological_coherence") return scale01(p.rate(lex::value()) * 9.0);
  if (id == "narrative_structure") return scale01(p.rate(lex::narrative()) * 8.0);
  if (id == "imperfection") return scale01(10.0 - p.rate(lex::disfluency()) * 12.0);
  if (id == "lexical_stylistic_personalization")
    return scale01((p.rate(lex::interjection()) + p.emoji / p.sentences) * 6.0);
  if (id == "stylistic_consistency") return scale01(p.rhythm * 10.0);
  if (id == "semantic_progression") return scale01(p.overlap * 20.0);
  if (id == "referential_chain_adaptivity") return scale01(p.rate(lex::demonstrative()) * 5.0);
  if (id == "strategic_repetition") return scale01(p.phrasal * 15.0);
  return 5;  // unknown criterion: mid anchor
}

std::vector<std::string> prompt_criterion_ids(const std::string& prompt) {
  std::vector<std::string> ids;
  const std::string marker = "[criterion id=";
  std::size_t pos = 0;
  while ((pos = prompt.find(marker, pos)) != std::string::npos) {
    pos += marker.size();
    std::size_t end = prompt.find_first_of(" ]", pos);
    if (end == std::string::npos) break;
    ids.push_back(prompt.substr(pos, end - pos));
    pos = end;
  }
  return ids;
}

std::string prompt_text(const std::string& prompt) {
  std::size_t open = prompt.find(kTextOpen);
  if (open == std::string::npos) return "";
  open += std::char_traits<char>::length(kTextOpen);
  if (open < prompt.size() && prompt[open] == '\n') ++open;
  std::size_t close = prompt.find(kTextClose, open);
  if (close == std::string::npos) return "";
  if (close > open && prompt[close - 1] == '\n') --close;
  return prompt.substr(open, close - open);
}

}  // namespace

std::string MockBackend::complete(const std::string& prompt, double /*temperature*/,
                                  std::uint64_t seed) {
  const std::string text = prompt_text(prompt);
  const std::vector<std::string> ids = prompt_criterion_ids(prompt);
  const bool verification = prompt.find("Re-derive") != std::string::npos;
  TextProfile profile(text);

  json j;
  for (const std::string& id : ids) {
    int score = proxy_score(profile, id);
    if (!verification) {
      // seeded, reproducible +-1 jitter on the initial pass only
      auto h = rng::fnv1a64(id + "\x1f" + text, seed ^ 0x5bd1e9955bd1e995ull);
      score += static_cast<int>(h % 3) - 1;
    }
    j[id] = std::clamp(score, 0, 10);
  }
  j["rationale"] = verification ? "re-derived from surface counts" : "surface lexical counts";

  std::string out;
  if (verification)
    out += "Step by step: recounted the surface markers per criterion, then rescored.\n";
  out += j.dump();
  return out;
}

// ---------------------------------------------------------------------------
// HTTP backend
// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw InvalidArgument("http backend needs a base_url");
  if (config_.model.empty()) throw InvalidArgument("http backend needs a model name");
}

std::string HttpBackend::id() const {
  return "http:" + config_.model + "@" + config_.base_url + config_.path;
}

std::string HttpBackend::complete(const std::string& prompt, double temperature,
                                  std::uint64_t seed) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (!key || !*key)
    throw Error("missing_api_key",
                "environment variable " + config_.api_key_env +
                    " is not set; export an API key or switch to the mock backend");

  json body;
  body["model"] = config_.model;
  body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = temperature;
  body["seed"] = seed;

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};
  auto res = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!res)
    throw IoError("no response from " + config_.base_url + " (" +
                  httplib::to_string(res.error()) + ")");
  if (res->status != 200)
    throw IoError("backend returned HTTP " + std::to_string(res->status) + ": " +
                  res->body.substr(0, 200));

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
      reply["choices"].empty() || !reply["choices"][0].contains("message") ||
      !reply["choices"][0]["message"].contains("content") ||
      !reply["choices"][0]["message"]["content"].is_string())
    throw RetryableParseError("backend reply missing choices[0].message.content");
  return reply["choices"][0]["message"]["content"].get<std::string>();
}

// ---------------------------------------------------------------------------
// Rate limiter
// ---------------------------------------------------------------------------

RateLimiter::RateLimiter(int requests_per_minute) : rpm_(requests_per_minute) {}

void RateLimiter::acquire() {
  if (rpm_ <= 0) return;
  const std::int64_t interval_us = 60'000'000ll / rpm_;
  std::int64_t wait_us = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto now = std::chrono::duration_cast<std::chrono::microseconds>(
                   std::chrono::steady_clock::now().time_since_epoch())
                   .count();
    std::int64_t slot = std::max(now, next_slot_us_);
    next_slot_us_ = slot + interval_us;
    wait_us = slot - now;
  }
  if (wait_us > 0) std::this_thread::sleep_for(std::chrono::microseconds(wait_us));
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

ScoreCache::ScoreCache(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_ + ": " + ec.message());
}

std::string ScoreCache::key(const std::string& text, const std::string& rubric_version,
                            const std::string& backend_id) {
  std::string material = text;
  material += '\x1f';
  material += rubric_version;
  material += '\x1f';
  material += backend_id;
  return rng::digest128_hex(material);
}

namespace {

json score_to_json(const RubricScore& s) {
  json j;
  j["criterion_id"] = s.criterion_id;
  j["raw_score"] = s.raw_score;
  j["normalized"] = s.normalized;
  j["rationale"] = s.rationale;
  j["verified"] = s.verified;
  j["verification_delta"] = s.verification_delta;
  j["clamped"] = s.clamped;
  return j;
}

std::optional<RubricScore> score_from_json(const json& j) {
  if (!j.is_object() || !j.contains("criterion_id") || !j.contains("raw_score")) return std::nullopt;
  RubricScore s;
  s.criterion_id = j["criterion_id"].get<std::string>();
  s.raw_score = j["raw_score"].get<int>();
  s.normalized = j.value("normalized", s.raw_score / 10.0);
  s.rationale = j.value("rationale", "");
  s.verified = j.value("verified", false);
  s.verification_delta = j.value("verification_delta", 0);
  s.clamped = j.value("clamped", false);
  return s;
}

}  // namespace

std::optional<std::vector<RubricScore>> ScoreCache::get(const std::string& key) const {
  std::ifstream in(std::filesystem::path(dir_) / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("scores") || !j["scores"].is_array())
    return std::nullopt;  // corrupt entries count as misses
  std::vector<RubricScore> scores;
  for (const json& sj : j["scores"]) {
    auto s = score_from_json(sj);
    if (!s) return std::nullopt;
    scores.push_back(std::move(*s));
  }
  return scores;
}

void ScoreCache::put(const std::string& key, const std::vector<RubricScore>& scores) {
  json j;
  j["key"] = key;
  json arr = json::array();
  for (const RubricScore& s : scores) arr.push_back(score_to_json(s));
  j["scores"] = arr;

  std::lock_guard<std::mutex> lock(write_mu_);
  auto final_path = std::filesystem::path(dir_) / (key + ".json");
  auto tmp_path = std::filesystem::path(dir_) / (key + ".json.tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache entry " + tmp_path.string());
    out << j.dump() << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) throw IoError("cannot publish cache entry " + final_path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

class CountingBackend : public ChatBackend {
 public:
  CountingBackend(ChatBackend& inner, ScoreStats* stats) : inner_(inner), stats_(stats) {}
  std::string id() const override { return inner_.id(); }
  std::string complete(const std::string& prompt, double temperature,
                       std::uint64_t seed) override {
    if (stats_) ++stats_->backend_calls;
    return inner_.complete(prompt, temperature, seed);
  }

 private:
  ChatBackend& inner_;
  ScoreStats* stats_;
};

}  // namespace

std::vector<RubricScore> score_text(const std::string& text, const RubricSet& rubric,
                                    ChatBackend& backend, ScoreCache* cache,
                                    const ScoreOptions& options, ScoreStats* stats) {
  const std::string cache_key = ScoreCache::key(text, rubric.version, backend.id());
  if (cache) {
    if (auto hit = cache->get(cache_key)) {
      if (stats) ++stats->cache_hits;
      return *hit;
    }
  }

  std::vector<std::string> ids;
  for (const RubricCriterion& c : rubric.criteria) ids.push_back(c.id);

  CountingBackend counted(backend, stats);
  const std::string prompt = build_scoring_prompt(text, rubric.criteria);

  std::vector<RubricScore> scores;
  std::string last_error = "no attempts made";
  bool parsed = false;
  for (int attempt = 0; attempt < options.max_attempts && !parsed; ++attempt) {
    try {
      std::string response = counted.complete(
          prompt, options.temperature,
          rng::derive_seed(options.seed, "score:" + std::to_string(attempt)));
      scores = parse_scores(response, ids);
      parsed = true;
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  if (!parsed)
    throw ScoringFailed("scoring failed after " + std::to_string(options.max_attempts) +
                        " attempts: " + last_error);

  if (options.verify)
    scores = verify_scores(text, rubric.criteria, scores, counted, options.temperature,
                           options.seed);

  if (cache) cache->put(cache_key, scores);
  return scores;
}

}  // namespace plad::rubric
