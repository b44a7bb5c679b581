#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "plad/corpus.hpp"
#include "plad/features.hpp"
#include "plad/gbdt.hpp"

namespace plad::analysis {

// ---------------------------------------------------------------------------
// Temporal trend
// ---------------------------------------------------------------------------

struct DailyPoint {
  std::int64_t day = 0;  // UTC day number
  double ai_fraction = 0.0;
  std::size_t n_posts = 0;
};

struct RollingPoint {
  std::int64_t day = 0;
  double value = 0.0;
  bool has_value = false;  // gap when no daily fraction falls in the window
};

struct TemporalSeries {
  std::vector<DailyPoint> daily;  // strictly increasing days, observed only
  std::vector<RollingPoint> rolling14;
  std::vector<RollingPoint> rolling30;
  // OLS over (day - first observed day, daily fraction); empty days omitted
  double ols_slope = 0.0;
  double ols_intercept = 0.0;
};

/// Daily AI share of posts judged AI at `threshold`, with 14/30-day rolling
/// means over every day of the observed range.
TemporalSeries temporal_trend(const std::vector<corpus::Post>& posts,
                              const std::vector<double>& verdicts,
                              double threshold = 0.5);

// ---------------------------------------------------------------------------
// Engagement comparison
// ---------------------------------------------------------------------------

/// Boxplot statistics on log10(1+x). Quantiles use linear interpolation at
/// h = (n-1)p; whiskers are the 1.5*IQR fences clamped to the observed range.
struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

struct EngagementGroup {
  corpus::Domain domain = corpus::Domain::Career;
  std::string group;  // "human" or "ai", by verdict
  std::size_t count = 0;
  BoxStats likes;
  BoxStats comments;
  BoxStats collections;
  double decline = 0.0;  // median log-likes minus median log-comments
};

struct EngagementSummary {
  std::vector<EngagementGroup> groups;  // domain order, human before ai
};

EngagementSummary engagement_compare(const std::vector<corpus::Post>& posts,
                                     const std::vector<double>& verdicts,
                                     double threshold = 0.5);

// ---------------------------------------------------------------------------
// Author tiers
// ---------------------------------------------------------------------------

enum class Tier { Traditional, Augmented, Reliant };

std::string tier_name(Tier tier);

struct AuthorStat {
  std::string author_id;
  std::size_t n_posts = 0;
  double ai_ratio = 0.0;
  Tier tier = Tier::Traditional;
};

struct TierStats {
  std::size_t n_authors = 0;
  double share = 0.0;
  double mean_log_likes = 0.0;
  double mean_log_comments = 0.0;
  double mean_log_collections = 0.0;
};

struct AuthorTierReport {
  std::vector<AuthorStat> authors;         // ordered by author_id
  std::array<TierStats, 3> tiers;          // indexed by Tier
  std::string note;                        // set when nobody qualifies
};

/// Authors with at least four posts, split by the share of their posts the
/// verdicts call AI: ratio <= low is Traditional, >= high is Reliant,
/// Augmented between.
AuthorTierReport author_tiers(const std::vector<corpus::Post>& posts,
                              const std::vector<double>& verdicts, double low = 0.2,
                              double high = 0.8, double threshold = 0.5);

// ---------------------------------------------------------------------------
// Feature correlations
// ---------------------------------------------------------------------------

struct CorrelationReport {
  std::size_t n_features = 0;
  std::size_t n_pairs = 0;
  std::vector<double> r;  // strict upper triangle, (i,j) with i<j, row-major
  double mean_abs_r = 0.0;
  double std_abs_r = 0.0;  // population std over pairs
  std::size_t weak_count = 0;    // |r| < 0.3
  std::size_t medium_count = 0;  // 0.3 <= |r| <= 0.7
  std::size_t strong_count = 0;  // |r| > 0.7
  std::array<std::size_t, 20> histogram{};  // |r| bins of width 0.05
  std::vector<std::size_t> zero_variance_columns;

  double at(std::size_t i, std::size_t j) const;
};

/// Pearson r for every column pair. Zero-variance columns are flagged and
/// their pairs reported as r = 0.
CorrelationReport correlation_report(const features::FeatureMatrix& matrix);

// ---------------------------------------------------------------------------
// Ablation study
// ---------------------------------------------------------------------------

struct AblationRow {
  std::string variant;                      // "full" or the dropped dimension
  std::map<std::string, double> macro_f1;   // task -> percent
};

struct AblationReport {
  std::vector<std::string> tasks;  // of "binary", "provider", "model"
  std::vector<AblationRow> rows;   // full first, then dimensions in order
};

/// Maps a stored authorship label onto a task's class space: "human" stays
/// itself; "ai:provider/model" becomes "ai" (binary), the provider, or the
/// "provider/model" pair (model task). Unknown tasks throw.
std::string task_label(const std::string& label, const std::string& task);

/// Deterministic per-label stratified split of row indices; train share is
/// `ratio` rounded half up within each label. Both halves come back sorted.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split_indices(
    const std::vector<std::string>& labels, double ratio, std::uint64_t seed);

/// Trains the full matrix and one variant per dropped dimension on a shared
/// stratified 80/20 split, reporting held-out macro-F1 per task derivable
/// from the labels.
AblationReport ablation_study(const features::FeatureMatrix& matrix,
                              const gbdt::TrainConfig& config);

// ---------------------------------------------------------------------------
// Zero-shot generalization
// ---------------------------------------------------------------------------

struct ZeroShotResult {
  double seen_accuracy = 0.0;  // fraction on the held-out split of seen models
  double unseen_recall = 0.0;  // fraction of holdout posts routed to their provider
  std::vector<std::string> train_ids;    // audit: rows the classifier saw
  std::vector<std::string> holdout_ids;  // rows of the held-out models
};

/// Provider-level classifier trained with every holdout model's rows removed.
/// Holdout entries use the "provider/model" form.
ZeroShotResult zero_shot_eval(const features::FeatureMatrix& matrix,
                              const std::vector<std::string>& holdout_models,
                              const gbdt::TrainConfig& config, double split_ratio = 0.8);

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

nlohmann::json temporal_to_json(const TemporalSeries& series);
nlohmann::json engagement_to_json(const EngagementSummary& summary);
nlohmann::json tiers_to_json(const AuthorTierReport& report);
nlohmann::json correlation_to_json(const CorrelationReport& report,
                                   const std::vector<std::string>& feature_ids);
nlohmann::json ablation_to_json(const AblationReport& report);
nlohmann::json zeroshot_to_json(const ZeroShotResult& result);

}  // namespace plad::analysis
