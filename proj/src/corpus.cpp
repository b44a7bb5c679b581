#include "plad/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "plad/datetime.hpp"
#include "plad/error.hpp"
#include "plad/lexicons.hpp"
#include "plad/rng.hpp"
#include "plad/unicode.hpp"

namespace plad::corpus {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Domains and authorship
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<const char*, kDomainCount> kDomainNames = {
    "Career", "Wellness",  "Travel", "Health",  "Food",
    "Pets",   "Education", "Sports", "Fashion", "Relationships",
};

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace

const char* domain_name(Domain d) {
  return kDomainNames[static_cast<std::size_t>(d)];
}

std::optional<Domain> domain_from_name(const std::string& name) {
  std::string needle = ascii_lower(name);
  for (int i = 0; i < kDomainCount; ++i)
    if (needle == ascii_lower(kDomainNames[static_cast<std::size_t>(i)]))
      return static_cast<Domain>(i);
  return std::nullopt;
}

std::string Authorship::label() const {
  switch (kind) {
    case Kind::Human:
      return "human";
    case Kind::AI:
      return "ai:" + provider + "/" + model;
    case Kind::Unlabeled:
      return "unlabeled";
  }
  return "unlabeled";
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {
// 2020-01-01T00:00:00Z, the earliest plausible post instant
constexpr std::int64_t kMinTimestamp = 1577836800;
}  // namespace

std::string validate_post(const Post& post, std::int64_t now_unix_seconds) {
  if (unicode::trim(post.content).empty()) return "content is empty";
  if (post.likes < 0) return "likes is negative";
  if (post.comments < 0) return "comments is negative";
  if (post.collections < 0) return "collections is negative";
  if (post.timestamp < kMinTimestamp || post.timestamp > now_unix_seconds)
    return "timestamp outside [2020-01-01, now]";
  if (post.authorship.kind == Authorship::Kind::AI &&
      (post.authorship.provider.empty() || post.authorship.model.empty()))
    return "ai authorship requires provider and model";
  return "";
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

namespace {

json authorship_to_json(const Authorship& a) {
  json j;
  switch (a.kind) {
    case Authorship::Kind::Human:
      j["kind"] = "human";
      break;
    case Authorship::Kind::AI:
      j["kind"] = "ai";
      j["provider"] = a.provider;
      j["model"] = a.model;
      break;
    case Authorship::Kind::Unlabeled:
      j["kind"] = "unlabeled";
      break;
  }
  return j;
}

Authorship authorship_from_json(const json& j, const ProviderRegistry* registry) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("authorship: expected object with string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "human") return Authorship::human();
  if (kind == "unlabeled") return Authorship::unlabeled();
  if (kind != "ai") throw SchemaError("authorship.kind: unknown value \"" + kind + "\"");
  if (!j.contains("provider") || !j["provider"].is_string() ||
      j["provider"].get<std::string>().empty())
    throw SchemaError("authorship.provider: required non-empty string for ai posts");
  if (!j.contains("model") || !j["model"].is_string() || j["model"].get<std::string>().empty())
    throw SchemaError("authorship.model: required non-empty string for ai posts");
  Authorship a = Authorship::ai(j["provider"].get<std::string>(), j["model"].get<std::string>());
  if (registry) {
    auto it = registry->find(a.provider);
    if (it == registry->end())
      throw SchemaError("authorship.provider: \"" + a.provider + "\" not in registry");
    if (std::find(it->second.begin(), it->second.end(), a.model) == it->second.end())
      throw SchemaError("authorship.model: \"" + a.model + "\" not registered for provider \"" +
                        a.provider + "\"");
  }
  return a;
}

const json& require_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string require_string(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_string()) throw SchemaError(std::string("field \"") + name + "\" must be a string");
  return f.get<std::string>();
}

std::int64_t require_count(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number_integer())
    throw SchemaError(std::string("field \"") + name + "\" must be an integer");
  return f.get<std::int64_t>();
}

}  // namespace

std::string post_to_json(const Post& post) {
  json j;
  j["id"] = post.id;
  j["title"] = post.title;
  j["content"] = post.content;
  j["tags"] = post.tags;
  j["timestamp"] = datetime::format_iso8601(post.timestamp);
  j["likes"] = post.likes;
  j["comments"] = post.comments;
  j["collections"] = post.collections;
  j["domain"] = domain_name(post.domain);
  if (post.author_id) j["author_id"] = *post.author_id;
  j["authorship"] = authorship_to_json(post.authorship);
  return j.dump();
}

Post post_from_json(const std::string& line, std::int64_t now_unix_seconds,
                    const ProviderRegistry* registry) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON");
  if (!j.is_object()) throw SchemaError("expected a JSON object");

  Post p;
  p.id = require_string(j, "id");
  p.title = require_string(j, "title");
  p.content = require_string(j, "content");

  const json& tags = require_field(j, "tags");
  if (!tags.is_array()) throw SchemaError("field \"tags\" must be an array");
  for (const json& t : tags) {
    if (!t.is_string()) throw SchemaError("field \"tags\" must contain only strings");
    p.tags.push_back(t.get<std::string>());
  }

  const std::string ts = require_string(j, "timestamp");
  auto parsed = datetime::parse_iso8601(ts);
  if (!parsed) throw SchemaError("field \"timestamp\" does not parse as ISO-8601: \"" + ts + "\"");
  p.timestamp = *parsed;

  p.likes = require_count(j, "likes");
  p.comments = require_count(j, "comments");
  p.collections = require_count(j, "collections");

  const std::string dom = require_string(j, "domain");
  auto d = domain_from_name(dom);
  if (!d) throw SchemaError("field \"domain\": unknown category \"" + dom + "\"");
  p.domain = *d;

  if (j.contains("author_id") && !j["author_id"].is_null()) {
    if (!j["author_id"].is_string())
      throw SchemaError("field \"author_id\" must be a string or null");
    p.author_id = j["author_id"].get<std::string>();
  }

  p.authorship = authorship_from_json(require_field(j, "authorship"), registry);

  std::string problem = validate_post(p, now_unix_seconds);
  if (!problem.empty()) throw SchemaError(problem);
  return p;
}

LoadReport load_jsonl(const std::string& path, const ProviderRegistry* registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::int64_t now = static_cast<std::int64_t>(::time(nullptr));

  LoadReport report;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (unicode::trim(line).empty()) continue;
    try {
      report.posts.push_back(post_from_json(line, now, registry));
    } catch (const Error& e) {
      report.errors.push_back({line_no, e.what()});
    }
  }
  return report;
}

void save_jsonl(const std::vector<Post>& posts, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const Post& p : posts) out << post_to_json(p) << '\n';
  if (!out) throw IoError("write to " + path + " failed");
}

ProviderRegistry load_provider_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaError("provider registry must be a JSON object");
  ProviderRegistry reg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_array())
      throw SchemaError("registry entry \"" + it.key() + "\" must be an array of model names");
    std::vector<std::string> models;
    for (const json& m : it.value()) {
      if (!m.is_string() || m.get<std::string>().empty())
        throw SchemaError("registry entry \"" + it.key() + "\" has a non-string model name");
      models.push_back(m.get<std::string>());
    }
    reg[it.key()] = std::move(models);
  }
  return reg;
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

PeriodSplit split_by_period(const std::vector<Post>& posts, std::int64_t cutoff) {
  PeriodSplit split;
  for (const Post& p : posts) {
    if (p.timestamp <= cutoff)
      split.pre_llm.push_back(p);
    else
      split.post_llm.push_back(p);
  }
  return split;
}

DatasetSplit stratified_split(const std::vector<Post>& posts, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("split ratio must be in (0,1)");

  std::map<std::string, std::vector<std::string>> by_label;
  for (const Post& p : posts) {
    if (!p.authorship.is_labeled())
      throw InvalidArgument("post \"" + p.id +
                            "\" is unlabeled; route it to the exploration set instead");
    by_label[p.authorship.label()].push_back(p.id);
  }

  DatasetSplit out;
  for (auto& [label, ids] : by_label) {
    rng::Engine eng(rng::derive_seed(seed, "split:" + label));
    rng::shuffle(ids, eng);
    auto n_train =
        static_cast<std::size_t>(std::floor(ratio * static_cast<double>(ids.size()) + 0.5));
    for (std::size_t i = 0; i < ids.size(); ++i)
      (i < n_train ? out.train : out.validation).push_back(ids[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

std::vector<DomainSummary> summarize(const std::vector<Post>& posts) {
  struct Acc {
    std::size_t count = 0;
    double length = 0, likes = 0, comments = 0, collections = 0;
  };
  std::array<Acc, kDomainCount> acc{};
  for (const Post& p : posts) {
    Acc& a = acc[static_cast<std::size_t>(p.domain)];
    ++a.count;
    a.length += static_cast<double>(unicode::count_codepoints(p.content));
    a.likes += static_cast<double>(p.likes);
    a.comments += static_cast<double>(p.comments);
    a.collections += static_cast<double>(p.collections);
  }
  std::vector<DomainSummary> rows;
  for (int d = 0; d < kDomainCount; ++d) {
    const Acc& a = acc[static_cast<std::size_t>(d)];
    if (a.count == 0) continue;
    auto n = static_cast<double>(a.count);
    rows.push_back({static_cast<Domain>(d), a.count, a.length / n, a.likes / n, a.comments / n,
                    a.collections / n});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Generator config
// ---------------------------------------------------------------------------

namespace {

void apply_style_key(StyleKnobs& s, const std::string& key, const json& v) {
  auto num = [&](double& slot) {
    if (!v.is_number()) throw SchemaError("style knob \"" + key + "\" must be a number");
    slot = v.get<double>();
  };
  auto integer = [&](int& slot) {
    if (!v.is_number_integer()) throw SchemaError("style knob \"" + key + "\" must be an integer");
    slot = v.get<int>();
  };
  if (key == "sentence_len_mean") num(s.sentence_len_mean);
  else if (key == "sentence_len_spread") num(s.sentence_len_spread);
  else if (key == "sentences_mean") integer(s.sentences_mean);
  else if (key == "vocab_size") integer(s.vocab_size);
  else if (key == "zipf_exponent") num(s.zipf_exponent);
  else if (key == "emoji_rate") num(s.emoji_rate);
  else if (key == "disfluency_rate") num(s.disfluency_rate);
  else if (key == "first_person_rate") num(s.first_person_rate);
  else if (key == "second_person_rate") num(s.second_person_rate);
  else if (key == "exclaim_rate") num(s.exclaim_rate);
  else if (key == "question_rate") num(s.question_rate);
  else if (key == "connective_rate") num(s.connective_rate);
  else if (key == "sensory_rate") num(s.sensory_rate);
  else if (key == "temporal_rate") num(s.temporal_rate);
  else if (key == "hedge_rate") num(s.hedge_rate);
  else if (key == "interjection_rate") num(s.interjection_rate);
  else if (key == "vocab_offset") integer(s.vocab_offset);
  else if (key == "signature_rate") num(s.signature_rate);
  else if (key == "engagement_mu") num(s.engagement_mu);
  else if (key == "engagement_sigma") num(s.engagement_sigma);
  else if (key == "engagement_scale") num(s.engagement_scale);
  else if (key == "signature_tokens") {
    if (!v.is_array()) throw SchemaError("style knob \"signature_tokens\" must be an array");
    s.signature_tokens.clear();
    for (const json& t : v) {
      if (!t.is_string()) throw SchemaError("signature_tokens must contain strings");
      s.signature_tokens.push_back(t.get<std::string>());
    }
  } else {
    throw SchemaError("unknown style knob \"" + key + "\"");
  }
}

}  // namespace

GeneratorConfig load_generator_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw SchemaError("generator config must be a JSON object");

  GeneratorConfig cfg;
  if (j.contains("author_pool")) {
    if (!j["author_pool"].is_number_integer() || j["author_pool"].get<int>() < 1)
      throw SchemaError("author_pool must be a positive integer");
    cfg.author_pool = j["author_pool"].get<int>();
  }
  const json& classes = require_field(j, "classes");
  if (!classes.is_array()) throw SchemaError("\"classes\" must be an array");
  for (const json& cj : classes) {
    if (!cj.is_object()) throw SchemaError("each class must be a JSON object");
    ClassSpec spec;
    spec.authorship = authorship_from_json(require_field(cj, "authorship"), nullptr);
    const json& count = require_field(cj, "count");
    if (!count.is_number_integer() || count.get<std::int64_t>() < 0)
      throw SchemaError("class count must be a non-negative integer");
    spec.count = count.get<std::size_t>();
    if (cj.contains("date_from")) spec.date_from = require_string(cj, "date_from");
    if (cj.contains("date_to")) spec.date_to = require_string(cj, "date_to");
    if (cj.contains("date_skew")) {
      if (!cj["date_skew"].is_number_integer())
        throw SchemaError("date_skew must be -1, 0 or 1");
      spec.date_skew = cj["date_skew"].get<int>();
    }
    if (cj.contains("style")) {
      const json& style = cj["style"];
      if (!style.is_object()) throw SchemaError("\"style\" must be a JSON object");
      for (auto it = style.begin(); it != style.end(); ++it)
        apply_style_key(spec.style, it.key(), it.value());
    }
    cfg.classes.push_back(std::move(spec));
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace {

/// Zipf sampler over a rotated window of the shared vocabulary.
struct VocabSampler {
  std::vector<std::string> entries;
  std::vector<double> cumulative;

  VocabSampler(int offset, int size, double exponent) {
    const auto& base = lexicons::base_vocabulary();
    const auto n = static_cast<std::size_t>(std::clamp<int>(size, 1, static_cast<int>(base.size())));
    auto start = static_cast<std::size_t>(((offset % static_cast<int>(base.size())) +
                                           static_cast<int>(base.size())) %
                                          static_cast<int>(base.size()));
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) entries.push_back(base[(start + i) % base.size()]);
    cumulative.resize(n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += std::pow(static_cast<double>(r + 1), -exponent);
      cumulative[r] = total;
    }
  }

  const std::string& draw(rng::Engine& eng) const {
    double x = rng::unit(eng) * cumulative.back();
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= entries.size()) idx = entries.size() - 1;
    return entries[idx];
  }
};

bool ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Latin tokens get a separating space; CJK concatenates directly.
void append_token(std::string& out, const std::string& token) {
  if (!out.empty() && !token.empty() && ascii_alnum(out.back()) && ascii_alnum(token.front()))
    out += ' ';
  out += token;
}

const std::string& pick(rng::Engine& eng, const std::vector<std::string>& pool) {
  return pool[rng::bounded(eng, pool.size())];
}

bool chance(rng::Engine& eng, double p) {
  return p > 0.0 && rng::unit(eng) < p;
}

std::string make_sentence(rng::Engine& eng, const StyleKnobs& style, const VocabSampler& vocab) {
  std::string s;
  if (chance(eng, style.connective_rate)) append_token(s, pick(eng, lexicons::connective()));
  if (chance(eng, style.first_person_rate)) append_token(s, pick(eng, lexicons::first_person()));
  if (chance(eng, style.second_person_rate)) append_token(s, pick(eng, lexicons::second_person()));
  if (chance(eng, style.disfluency_rate)) append_token(s, pick(eng, lexicons::disfluency()));
  if (chance(eng, style.signature_rate) && !style.signature_tokens.empty())
    append_token(s, style.signature_tokens[rng::bounded(eng, style.signature_tokens.size())]);

  double raw = rng::lognormal(eng, std::log(std::max(1.0, style.sentence_len_mean)),
                              std::max(0.0, style.sentence_len_spread));
  auto length = static_cast<int>(std::clamp(std::llround(raw), 1ll, 120ll));
  for (int i = 0; i < length; ++i) {
    append_token(s, vocab.draw(eng));
    if (chance(eng, style.emoji_rate)) s += pick(eng, lexicons::emoji());
  }
  if (chance(eng, style.sensory_rate)) append_token(s, pick(eng, lexicons::sensory()));
  if (chance(eng, style.temporal_rate)) append_token(s, pick(eng, lexicons::temporal()));
  if (chance(eng, style.hedge_rate)) append_token(s, pick(eng, lexicons::hedge()));
  if (chance(eng, style.interjection_rate)) append_token(s, pick(eng, lexicons::interjection()));

  if (chance(eng, style.exclaim_rate))
    s += "！";
  else if (chance(eng, style.question_rate))
    s += "？";
  else
    s += "。";
  return s;
}

std::string make_content(rng::Engine& eng, const StyleKnobs& style, const VocabSampler& vocab) {
  int sentences = std::max(1, style.sentences_mean - 1 + static_cast<int>(rng::bounded(eng, 3)));
  std::string content;
  for (int i = 0; i < sentences; ++i) {
    if (i > 0) {
      if (chance(eng, 0.25))
        content += "\n\n";
    }
    content += make_sentence(eng, style, vocab);
  }
  return content;
}

std::string make_title(rng::Engine& eng, const StyleKnobs& style, const VocabSampler& vocab) {
  std::string title;
  int n = 3 + static_cast<int>(rng::bounded(eng, 3));
  for (int i = 0; i < n; ++i) append_token(title, vocab.draw(eng));
  if (chance(eng, style.exclaim_rate)) title += "！";
  return title;
}

std::int64_t day_fraction_to_ts(double f, std::int64_t from_day, std::int64_t days_total,
                                std::int64_t seconds) {
  auto offset = static_cast<std::int64_t>(f * static_cast<double>(days_total + 1));
  if (offset > days_total) offset = days_total;
  return (from_day + offset) * 86400 + seconds;
}

}  // namespace

std::vector<Post> synthesize_corpus(const GeneratorConfig& config, std::uint64_t seed) {
  const int pool = std::max(1, config.author_pool);
  // author a posts AI content with propensity p ~ a/(A-1); the quadratic
  // weights concentrate each class on its own end of the pool while the floor
  // keeps every author reachable
  std::vector<double> human_weights(static_cast<std::size_t>(pool));
  std::vector<double> ai_weights(static_cast<std::size_t>(pool));
  for (int a = 0; a < pool; ++a) {
    double p = pool > 1 ? static_cast<double>(a) / (pool - 1) : 0.5;
    human_weights[static_cast<std::size_t>(a)] = (1.0 - p) * (1.0 - p) + 0.05;
    ai_weights[static_cast<std::size_t>(a)] = p * p + 0.05;
  }

  std::vector<Post> posts;
  for (std::size_t ci = 0; ci < config.classes.size(); ++ci) {
    const ClassSpec& spec = config.classes[ci];
    if (spec.count == 0) continue;

    auto from = datetime::parse_iso8601(spec.date_from);
    auto to = datetime::parse_iso8601(spec.date_to);
    if (!from || !to || *to < *from)
      throw InvalidArgument("class " + std::to_string(ci) + ": bad date range [" + spec.date_from +
                            ", " + spec.date_to + "]");
    const std::int64_t from_day = datetime::utc_day(*from);
    const std::int64_t days_total = datetime::utc_day(*to) - from_day;

    rng::Engine eng(rng::derive_seed(seed, "class:" + std::to_string(ci)));
    VocabSampler vocab(spec.style.vocab_offset, spec.style.vocab_size, spec.style.zipf_exponent);

    // unlabeled classes with disfluencies share the human author weighting
    const bool human_like = spec.authorship.kind == Authorship::Kind::Human ||
                            (spec.authorship.kind == Authorship::Kind::Unlabeled &&
                             spec.style.disfluency_rate > 0.0);
    const std::vector<double>& weights = human_like ? human_weights : ai_weights;

    for (std::size_t n = 0; n < spec.count; ++n) {
      Post p;
      p.id = "synth-" + std::to_string(ci) + "-" + std::to_string(n);

      double u = rng::unit(eng);
      double f = u;
      if (spec.date_skew < 0) f = 1.0 - std::sqrt(u);
      else if (spec.date_skew > 0) f = std::sqrt(u);
      p.timestamp = day_fraction_to_ts(f, from_day, days_total,
                                       static_cast<std::int64_t>(rng::bounded(eng, 86400)));

      p.author_id = "author-" + std::to_string(rng::weighted(eng, weights));
      p.domain = static_cast<Domain>(rng::bounded(eng, kDomainCount));
      p.title = make_title(eng, spec.style, vocab);
      p.content = make_content(eng, spec.style, vocab);
      p.tags = {ascii_lower(domain_name(p.domain))};

      const StyleKnobs& st = spec.style;
      p.likes = std::llround(rng::lognormal(eng, st.engagement_mu, st.engagement_sigma) *
                             st.engagement_scale);
      p.comments = std::llround(
          rng::lognormal(eng, st.engagement_mu - 1.8, st.engagement_sigma) * st.engagement_scale);
      p.collections = std::llround(
          rng::lognormal(eng, st.engagement_mu - 1.2, st.engagement_sigma) * st.engagement_scale);

      p.authorship = spec.authorship;
      posts.push_back(std::move(p));
    }
  }
  return posts;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

namespace {

StyleKnobs human_style() {
  StyleKnobs s;
  s.sentence_len_mean = 10.0;
  s.sentence_len_spread = 0.9;
  s.sentences_mean = 8;
  s.vocab_size = 280;
  s.zipf_exponent = 1.25;
  s.emoji_rate = 0.08;
  s.disfluency_rate = 0.35;
  s.first_person_rate = 0.35;
  s.second_person_rate = 0.08;
  s.exclaim_rate = 0.3;
  s.question_rate = 0.12;
  s.connective_rate = 0.12;
  s.sensory_rate = 0.2;
  s.temporal_rate = 0.18;
  s.hedge_rate = 0.1;
  s.interjection_rate = 0.3;
  s.engagement_mu = 3.2;
  s.engagement_sigma = 1.3;
  s.engagement_scale = 10.0;
  return s;
}

StyleKnobs ai_style() {
  StyleKnobs s;
  s.sentence_len_mean = 13.0;
  s.sentence_len_spread = 0.08;
  s.sentences_mean = 8;
  s.vocab_size = 900;
  s.zipf_exponent = 0.55;
  s.emoji_rate = 0.02;
  s.disfluency_rate = 0.0;
  s.first_person_rate = 0.06;
  s.second_person_rate = 0.03;
  s.exclaim_rate = 0.05;
  s.question_rate = 0.03;
  s.connective_rate = 0.22;
  s.sensory_rate = 0.06;
  s.temporal_rate = 0.06;
  s.hedge_rate = 0.04;
  s.interjection_rate = 0.0;
  s.vocab_offset = 60;
  s.engagement_mu = 3.0;
  s.engagement_sigma = 1.3;
  s.engagement_scale = 1.0;
  return s;
}

}  // namespace

GeneratorConfig default_fixture(std::size_t human_count, std::size_t ai_count) {
  GeneratorConfig cfg;
  cfg.classes.push_back({Authorship::human(), human_count, human_style()});
  cfg.classes.push_back({Authorship::ai("nova", "nova-chat"), ai_count, ai_style()});
  return cfg;
}

GeneratorConfig lexical_signal_fixture(std::size_t per_class) {
  // identical emotional and engagement profile; the class signal rides on
  // sentence rhythm plus a mild vocabulary-breadth shift, kept small enough
  // that repetition-driven cohesion columns stay near-neutral
  StyleKnobs narrow = human_style();
  narrow.disfluency_rate = 0.0;
  narrow.interjection_rate = 0.0;
  narrow.engagement_scale = 1.0;
  narrow.sentence_len_spread = 0.55;
  narrow.vocab_size = 420;
  narrow.zipf_exponent = 0.85;

  StyleKnobs wide = narrow;
  wide.sentence_len_spread = 0.05;
  wide.vocab_size = 620;
  wide.zipf_exponent = 0.7;
  wide.vocab_offset = 40;

  GeneratorConfig cfg;
  cfg.classes.push_back({Authorship::human(), per_class, narrow});
  cfg.classes.push_back({Authorship::ai("lexa", "lexa-1"), per_class, wide});
  return cfg;
}

GeneratorConfig provider_family_fixture(std::size_t per_model) {
  struct Family {
    const char* provider;
    int offset;
    std::vector<std::string> signature;
  };
  const std::vector<Family> families = {
      {"aurora", 0, {"综上所述", "不妨"}},
      {"breeze", 150, {"值得一提", "让我们"}},
      {"cinder", 300, {"总的来说", "不难发现"}},
  };

  GeneratorConfig cfg;
  for (const Family& fam : families) {
    for (int variant = 0; variant < 2; ++variant) {
      StyleKnobs s = ai_style();
      s.vocab_offset = fam.offset;
      s.signature_tokens = fam.signature;
      s.signature_rate = 0.4;
      // small per-model tweaks on top of the shared provider signature
      s.sentence_len_mean = variant == 0 ? 11.0 : 14.0;
      s.emoji_rate = variant == 0 ? 0.01 : 0.04;
      std::string model = std::string(fam.provider) + (variant == 0 ? "-s" : "-m");
      cfg.classes.push_back({Authorship::ai(fam.provider, model), per_model, s});
    }
  }
  return cfg;
}

GeneratorConfig exploration_fixture(std::size_t count, int days) {
  if (days < 2) days = 2;
  const std::int64_t from_day = datetime::utc_day(*datetime::parse_iso8601("2023-01-01"));
  const std::string date_to = datetime::format_day(from_day + days - 1);

  StyleKnobs fading = human_style();
  fading.engagement_scale = 8.0;
  StyleKnobs rising = ai_style();
  rising.engagement_scale = 1.0;

  ClassSpec early{Authorship::unlabeled(), count / 2, fading, "2023-01-01", date_to, -1};
  ClassSpec late{Authorship::unlabeled(), count - count / 2, rising, "2023-01-01", date_to, +1};

  GeneratorConfig cfg;
  cfg.classes = {early, late};
  return cfg;
}

}  // namespace plad::corpus
