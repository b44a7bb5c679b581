#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plad/corpus.hpp"
#include "plad/rubric.hpp"

namespace plad::features {

using rubric::Dimension;

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

enum class Source { Statistical, Rubric };

struct RegistryEntry {
  int index = 0;
  std::string id;
  Dimension dimension = Dimension::Emotional;
  Source source = Source::Statistical;
};

/// Ordered feature roster. The registry is the single source of truth for
/// column meaning; every matrix and model carries its version string.
struct Registry {
  std::string version;
  std::vector<RegistryEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::optional<std::size_t> index_of(const std::string& id) const;
  std::vector<std::string> ids() const;
};

inline constexpr char kRegistryVersion[] = "plad-features-v1";

/// The frozen 31-feature roster: Emotional 8, Cognitive 7, Lexical 9,
/// Cohesion 7; 18 rubric-sourced, 13 statistical.
const Registry& default_registry();

/// Contiguous indices, unique ids; the default version additionally must
/// carry the exact 8/7/9/7 dimension tally.
void validate_registry(const Registry& registry);

/// Registry with the given dimensions' columns removed and indices
/// renumbered; version gains one "-wo<Dimension>" suffix per dropped
/// dimension, in enum order.
Registry ablated_registry(const Registry& base, const std::vector<Dimension>& dropped);

/// Resolves a version string: the default version with zero or more
/// "-wo<Dimension>" suffixes. Throws VersionMismatch otherwise.
Registry registry_for_version(const std::string& version);

void save_registry(const Registry& registry, const std::string& path);
Registry load_registry(const std::string& path);

// ---------------------------------------------------------------------------
// Vectors and matrices
// ---------------------------------------------------------------------------

struct FeatureVector {
  std::string post_id;
  std::vector<double> values;  // registry order
};

struct FeatureMatrix {
  std::string registry_version;
  std::vector<FeatureVector> rows;
  std::vector<std::string> labels;  // empty, or exactly one per row

  std::size_t width() const { return rows.empty() ? 0 : rows.front().values.size(); }
};

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

/// One 31-slot vector: statistical features from the title+content
/// concatenation, rubric features from the judge pipeline. Scoring errors
/// carry the post id; no partial vectors are produced.
FeatureVector extract(const corpus::Post& post, const rubric::RubricSet& rubric_set,
                      rubric::ChatBackend& backend, rubric::ScoreCache* cache = nullptr,
                      const rubric::ScoreOptions& options = {},
                      rubric::ScoreStats* stats = nullptr);

struct ExtractConfig {
  rubric::ScoreOptions score;
  int n_threads = 1;
  rubric::RateLimiter* limiter = nullptr;  // shared across worker threads
};

/// Batch extraction; rows are written into disjoint slots so worker threads
/// never contend, and the result is identical for any thread count.
FeatureMatrix extract_matrix(const std::vector<corpus::Post>& posts,
                             const rubric::RubricSet& rubric_set, rubric::ChatBackend& backend,
                             rubric::ScoreCache* cache = nullptr, const ExtractConfig& config = {},
                             rubric::ScoreStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Ablation and I/O
// ---------------------------------------------------------------------------

FeatureMatrix ablate(const FeatureMatrix& matrix, Dimension dropped);

/// Header = feature ids + "label"; values at 12 significant digits. Post ids
/// are not stored; loading names rows "row0", "row1", ...
void save_matrix_csv(const FeatureMatrix& matrix, const std::string& path);

/// Accepts the full roster or any dimension-complete subset of it, in
/// registry order; anything else is a schema error naming the column.
FeatureMatrix load_matrix_csv(const std::string& path);

}  // namespace plad::features
