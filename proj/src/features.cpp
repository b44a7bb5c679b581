#include "plad/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plad/error.hpp"
#include "plad/parallel.hpp"
#include "plad/textstats.hpp"
#include "plad/unicode.hpp"

namespace plad::features {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

std::optional<std::size_t> Registry::index_of(const std::string& id) const {
  for (const RegistryEntry& e : entries)
    if (e.id == id) return static_cast<std::size_t>(e.index);
  return std::nullopt;
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const RegistryEntry& e : entries) out.push_back(e.id);
  return out;
}

namespace {

Registry build_default_registry() {
  struct Item {
    const char* id;
    Dimension dim;
    Source source;
  };
  // rubric criteria lead each dimension block, statistical features follow
  const Item items[] = {
      {"emotional_intensity", Dimension::Emotional, Source::Rubric},
      {"sensory_detail_richness", Dimension::Emotional, Source::Rubric},
      {"personal_grounding", Dimension::Emotional, Source::Rubric},
      {"social_connection", Dimension::Emotional, Source::Rubric},
      {"empathetic_engagement", Dimension::Emotional, Source::Rubric},
      {"interactive_dialogic_stance", Dimension::Emotional, Source::Rubric},
      {"emoji_density", Dimension::Emotional, Source::Statistical},
      {"emoji_position_entropy", Dimension::Emotional, Source::Statistical},
      {"perspectival_complexity", Dimension::Cognitive, Source::Rubric},
      {"dialectical_reasoning", Dimension::Cognitive, Source::Rubric},
      {"temporal_coherence", Dimension::Cognitive, Source::Rubric},
      {"ambiguity_tolerance", Dimension::Cognitive, Source::Rubric},
      {"axiological_coherence", Dimension::Cognitive, Source::Rubric},
      {"narrative_structure", Dimension::Cognitive, Source::Rubric},
      {"concessive_marker_ratio", Dimension::Cognitive, Source::Statistical},
      {"imperfection", Dimension::Lexical, Source::Rubric},
      {"lexical_stylistic_personalization", Dimension::Lexical, Source::Rubric},
      {"stylistic_consistency", Dimension::Lexical, Source::Rubric},
      {"type_token_ratio", Dimension::Lexical, Source::Statistical},
      {"word_frequency_entropy", Dimension::Lexical, Source::Statistical},
      {"hapax_ratio", Dimension::Lexical, Source::Statistical},
      {"prosodic_rhythm_consistency", Dimension::Lexical, Source::Statistical},
      {"sentence_burstiness", Dimension::Lexical, Source::Statistical},
      {"punctuation_ratio", Dimension::Lexical, Source::Statistical},
      {"semantic_progression", Dimension::Cohesion, Source::Rubric},
      {"referential_chain_adaptivity", Dimension::Cohesion, Source::Rubric},
      {"strategic_repetition", Dimension::Cohesion, Source::Rubric},
      {"phrasal_repetition_frequency", Dimension::Cohesion, Source::Statistical},
      {"adjacent_sentence_overlap", Dimension::Cohesion, Source::Statistical},
      {"paragraph_length_variation", Dimension::Cohesion, Source::Statistical},
      {"punctuation_diversity", Dimension::Cohesion, Source::Statistical},
  };
  Registry reg;
  reg.version = kRegistryVersion;
  int index = 0;
  for (const Item& item : items)
    reg.entries.push_back({index++, item.id, item.dim, item.source});
  return reg;
}

constexpr std::array<int, rubric::kDimensionCount> kDimensionTally = {8, 7, 9, 7};

}  // namespace

const Registry& default_registry() {
  static const Registry kRegistry = build_default_registry();
  return kRegistry;
}

void validate_registry(const Registry& registry) {
  if (registry.version.empty()) throw SchemaError("registry has no version");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < registry.entries.size(); ++i) {
    const RegistryEntry& e = registry.entries[i];
    if (e.index != static_cast<int>(i))
      throw SchemaError("registry indices not contiguous at \"" + e.id + "\"");
    if (!seen.insert(e.id).second) throw SchemaError("duplicate feature id \"" + e.id + "\"");
  }
  if (registry.version == kRegistryVersion) {
    if (registry.entries.size() != 31)
      throw SchemaError("default registry must have 31 entries");
    std::array<int, rubric::kDimensionCount> tally{};
    for (const RegistryEntry& e : registry.entries)
      ++tally[static_cast<std::size_t>(e.dimension)];
    if (tally != kDimensionTally)
      throw SchemaError("default registry dimension tally must be 8/7/9/7");
  }
}

Registry ablated_registry(const Registry& base, const std::vector<Dimension>& dropped) {
  std::array<bool, rubric::kDimensionCount> drop{};
  for (Dimension d : dropped) drop[static_cast<std::size_t>(d)] = true;

  Registry out;
  out.version = base.version;
  for (int d = 0; d < rubric::kDimensionCount; ++d) {
    if (drop[static_cast<std::size_t>(d)])
      out.version += std::string("-wo") + rubric::dimension_name(static_cast<Dimension>(d));
  }
  int index = 0;
  for (const RegistryEntry& e : base.entries) {
    if (drop[static_cast<std::size_t>(e.dimension)]) continue;
    out.entries.push_back({index++, e.id, e.dimension, e.source});
  }
  return out;
}

Registry registry_for_version(const std::string& version) {
  const std::string base = kRegistryVersion;
  if (version == base) return default_registry();
  if (version.rfind(base, 0) != 0)
    throw VersionMismatch("unknown registry version \"" + version + "\"");

  std::string rest = version.substr(base.size());
  std::vector<Dimension> dropped;
  while (!rest.empty()) {
    if (rest.rfind("-wo", 0) != 0)
      throw VersionMismatch("unknown registry version \"" + version + "\"");
    rest = rest.substr(3);
    std::size_t next = rest.find("-wo");
    std::string name = rest.substr(0, next);
    auto dim = rubric::dimension_from_name(name);
    if (!dim) throw VersionMismatch("unknown registry version \"" + version + "\"");
    dropped.push_back(*dim);
    rest = next == std::string::npos ? "" : rest.substr(next);
  }
  Registry reg = ablated_registry(default_registry(), dropped);
  if (reg.version != version)  // suffixes out of enum order or repeated
    throw VersionMismatch("unknown registry version \"" + version + "\"");
  return reg;
}

void save_registry(const Registry& registry, const std::string& path) {
  validate_registry(registry);
  json j;
  j["version"] = registry.version;
  json arr = json::array();
  for (const RegistryEntry& e : registry.entries) {
    arr.push_back({{"index", e.index},
                   {"id", e.id},
                   {"dimension", rubric::dimension_name(e.dimension)},
                   {"source", e.source == Source::Rubric ? "rubric" : "statistical"}});
  }
  j["entries"] = arr;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError("registry must be a JSON object");
  Registry reg;
  if (!j.contains("version") || !j["version"].is_string())
    throw SchemaError("registry missing string \"version\"");
  reg.version = j["version"].get<std::string>();
  if (!j.contains("entries") || !j["entries"].is_array())
    throw SchemaError("registry missing \"entries\" array");
  for (const json& ej : j["entries"]) {
    RegistryEntry e;
    e.index = ej.at("index").get<int>();
    e.id = ej.at("id").get<std::string>();
    auto dim = rubric::dimension_from_name(ej.at("dimension").get<std::string>());
    if (!dim) throw SchemaError("entry \"" + e.id + "\" has an unknown dimension");
    e.dimension = *dim;
    std::string source = ej.at("source").get<std::string>();
    if (source == "rubric")
      e.source = Source::Rubric;
    else if (source == "statistical")
      e.source = Source::Statistical;
    else
      throw SchemaError("entry \"" + e.id + "\" has an unknown source \"" + source + "\"");
    reg.entries.push_back(std::move(e));
  }
  validate_registry(reg);
  return reg;
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

namespace {

double stat_value(const textstats::StatFeatures& f, const std::string& id) {
  if (id == "type_token_ratio") return f.type_token_ratio;
  if (id == "word_frequency_entropy") return f.word_frequency_entropy;
  if (id == "hapax_ratio") return f.hapax_ratio;
  if (id == "sentence_burstiness") return f.sentence_burstiness;
  if (id == "prosodic_rhythm_consistency") return f.prosodic_rhythm_consistency;
  if (id == "phrasal_repetition_frequency") return f.phrasal_repetition_frequency;
  if (id == "emoji_density") return f.emoji_density;
  if (id == "emoji_position_entropy") return f.emoji_position_entropy;
  if (id == "punctuation_ratio") return f.punctuation_ratio;
  if (id == "punctuation_diversity") return f.punctuation_diversity;
  if (id == "adjacent_sentence_overlap") return f.adjacent_sentence_overlap;
  if (id == "paragraph_length_variation") return f.paragraph_length_variation;
  if (id == "concessive_marker_ratio") return f.concessive_marker_ratio;
  throw SchemaError("no statistical feature named \"" + id + "\"");
}

std::string combined_text(const corpus::Post& post) {
  if (unicode::trim(post.title).empty()) return post.content;
  return post.title + "\n\n" + post.content;
}

}  // namespace

FeatureVector extract(const corpus::Post& post, const rubric::RubricSet& rubric_set,
                      rubric::ChatBackend& backend, rubric::ScoreCache* cache,
                      const rubric::ScoreOptions& options, rubric::ScoreStats* stats) {
  if (unicode::trim(post.content).empty())
    throw InvalidArgument("post \"" + post.id + "\" has empty content");

  const std::string text = combined_text(post);
  auto stat = textstats::stat_features(text);

  std::vector<rubric::RubricScore> scores;
  try {
    scores = rubric::score_text(text, rubric_set, backend, cache, options, stats);
  } catch (const ScoringFailed& e) {
    throw ScoringFailed("post \"" + post.id + "\": " + e.what());
  }
  std::map<std::string, double> by_id;
  for (const rubric::RubricScore& s : scores) by_id[s.criterion_id] = s.normalized;

  const Registry& reg = default_registry();
  FeatureVector vec;
  vec.post_id = post.id;
  vec.values.reserve(reg.size());
  for (const RegistryEntry& e : reg.entries) {
    double v = 0.0;
    if (e.source == Source::Statistical) {
      v = stat_value(stat, e.id);
    } else {
      auto it = by_id.find(e.id);
      if (it == by_id.end())
        throw ScoringFailed("post \"" + post.id + "\": rubric did not score \"" + e.id + "\"");
      v = it->second;
    }
    if (!std::isfinite(v))
      throw InvalidArgument("post \"" + post.id + "\": feature \"" + e.id + "\" is not finite");
    vec.values.push_back(v);
  }
  return vec;
}

FeatureMatrix extract_matrix(const std::vector<corpus::Post>& posts,
                             const rubric::RubricSet& rubric_set, rubric::ChatBackend& backend,
                             rubric::ScoreCache* cache, const ExtractConfig& config,
                             rubric::ScoreStats* stats) {
  const std::size_t n = posts.size();
  FeatureMatrix matrix;
  matrix.registry_version = default_registry().version;
  matrix.rows.resize(n);
  matrix.labels.resize(n);

  // per-row slots keep workers disjoint; errors cross the thread boundary as
  // captured type/message pairs
  std::vector<rubric::ScoreStats> row_stats(n);
  std::vector<std::string> err_type(n), err_msg(n);

  parallel::for_range(n, config.n_threads, [&](std::size_t i) {
    try {
      if (config.limiter) config.limiter->acquire();
      matrix.rows[i] = extract(posts[i], rubric_set, backend, cache, config.score, &row_stats[i]);
      matrix.labels[i] = posts[i].authorship.label();
    } catch (const Error& e) {
      err_type[i] = e.type();
      err_msg[i] = e.what();
    } catch (const std::exception& e) {
      err_type[i] = "internal";
      err_msg[i] = e.what();
    }
  });

  if (stats) {
    for (const rubric::ScoreStats& s : row_stats) {
      stats->backend_calls += s.backend_calls;
      stats->cache_hits += s.cache_hits;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!err_type[i].empty()) throw Error(err_type[i], err_msg[i]);
  }
  return matrix;
}

// ---------------------------------------------------------------------------
// Ablation
// ---------------------------------------------------------------------------

FeatureMatrix ablate(const FeatureMatrix& matrix, Dimension dropped) {
  Registry current = registry_for_version(matrix.registry_version);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < current.entries.size(); ++i)
    if (current.entries[i].dimension != dropped) kept.push_back(i);

  // reconstruct the dropped set from both the old version and this call
  std::vector<Dimension> all_dropped;
  const Registry& full = default_registry();
  const std::vector<std::string> ids = current.ids();
  std::set<std::string> current_ids(ids.begin(), ids.end());
  for (int d = 0; d < rubric::kDimensionCount; ++d) {
    auto dim = static_cast<Dimension>(d);
    bool present = false;
    for (const RegistryEntry& e : full.entries)
      if (e.dimension == dim && current_ids.count(e.id)) present = true;
    if (!present || dim == dropped) all_dropped.push_back(dim);
  }
  Registry target = ablated_registry(full, all_dropped);

  FeatureMatrix out;
  out.registry_version = target.version;
  out.labels = matrix.labels;
  out.rows.reserve(matrix.rows.size());
  for (const FeatureVector& row : matrix.rows) {
    if (row.values.size() != current.entries.size())
      throw SchemaError("row \"" + row.post_id + "\" width does not match registry");
    FeatureVector slim;
    slim.post_id = row.post_id;
    slim.values.reserve(kept.size());
    for (std::size_t i : kept) slim.values.push_back(row.values[i]);
    out.rows.push_back(std::move(slim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV I/O
// ---------------------------------------------------------------------------

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace

void save_matrix_csv(const FeatureMatrix& matrix, const std::string& path) {
  Registry reg = registry_for_version(matrix.registry_version);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);

  std::string header;
  for (const RegistryEntry& e : reg.entries) {
    header += e.id;
    header += ',';
  }
  header += "label";
  out << header << '\n';

  if (!matrix.labels.empty() && matrix.labels.size() != matrix.rows.size())
    throw InvalidArgument("labels do not align with rows");

  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    const FeatureVector& row = matrix.rows[r];
    if (row.values.size() != reg.size())
      throw SchemaError("row \"" + row.post_id + "\" width does not match registry");
    std::string line;
    for (double v : row.values) {
      line += format_value(v);
      line += ',';
    }
    std::string label = matrix.labels.empty() ? "unlabeled" : matrix.labels[r];
    if (label.find_first_of(",\"\n") != std::string::npos)
      throw InvalidArgument("label \"" + label + "\" contains CSV delimiters");
    line += label;
    out << line << '\n';
  }
  if (!out) throw IoError("write to " + path + " failed");
}

FeatureMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty matrix file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  if (header.empty() || header.back() != "label")
    throw SchemaError("last column must be \"label\"");
  header.pop_back();

  const Registry& full = default_registry();
  std::set<std::string> present;
  for (const std::string& id : header) {
    if (!full.index_of(id)) throw SchemaError("unknown column \"" + id + "\"");
    if (!present.insert(id).second) throw SchemaError("duplicate column \"" + id + "\"");
  }

  // only dimension-complete subsets are meaningful to downstream models
  std::vector<Dimension> dropped;
  for (int d = 0; d < rubric::kDimensionCount; ++d) {
    auto dim = static_cast<Dimension>(d);
    std::size_t have = 0, total = 0;
    for (const RegistryEntry& e : full.entries) {
      if (e.dimension != dim) continue;
      ++total;
      if (present.count(e.id)) ++have;
    }
    if (have == 0)
      dropped.push_back(dim);
    else if (have != total)
      throw SchemaError(std::string("columns cover dimension \"") + rubric::dimension_name(dim) +
                        "\" only partially");
  }
  Registry reg = ablated_registry(full, dropped);
  if (header != reg.ids()) throw SchemaError("columns are not in registry order");

  FeatureMatrix matrix;
  matrix.registry_version = reg.version;
  int row_index = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size() + 1)
      throw SchemaError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size() + 1) + " fields, got " +
                        std::to_string(fields.size()));
    FeatureVector row;
    row.post_id = "row" + std::to_string(row_index++);
    row.values.reserve(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      char* end = nullptr;
      double v = std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0' || !std::isfinite(v))
        throw SchemaError("line " + std::to_string(line_no) + ": column \"" + header[i] +
                          "\" is not a finite number");
      row.values.push_back(v);
    }
    matrix.labels.push_back(fields.back());
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace plad::features
