#include "plad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "plad/datetime.hpp"
#include "plad/error.hpp"
#include "plad/rng.hpp"

namespace plad::analysis {

using json = nlohmann::json;

namespace {

double log1p10(long long count) { return std::log10(1.0 + static_cast<double>(count)); }

/// Linear-interpolation quantile at h = (n-1)p over a sorted vector.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  double h = static_cast<double>(sorted.size() - 1) * p;
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  BoxStats box;
  box.q1 = quantile(values, 0.25);
  box.median = quantile(values, 0.5);
  box.q3 = quantile(values, 0.75);
  double iqr = box.q3 - box.q1;
  box.whisker_low = std::max(values.front(), box.q1 - 1.5 * iqr);
  box.whisker_high = std::min(values.back(), box.q3 + 1.5 * iqr);
  return box;
}

}  // namespace

// Mirrors the corpus splitter: per-label shuffle with a label-derived stream.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split_indices(
    const std::vector<std::string>& labels, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0) || !(ratio < 1.0)) throw InvalidArgument("split ratio must be in (0, 1)");
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  std::vector<std::size_t> train, test;
  for (auto& [label, idx] : groups) {
    rng::Engine eng(rng::derive_seed(seed, "split:" + label));
    rng::shuffle(idx, eng);
    auto n_train = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(idx.size()) + 0.5));
    for (std::size_t i = 0; i < idx.size(); ++i)
      (i < n_train ? train : test).push_back(idx[i]);
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// Temporal trend
// ---------------------------------------------------------------------------

TemporalSeries temporal_trend(const std::vector<corpus::Post>& posts,
                              const std::vector<double>& verdicts, double threshold) {
  if (posts.empty()) throw InvalidArgument("no posts to analyze");
  if (posts.size() != verdicts.size())
    throw InvalidArgument("verdicts do not align with posts");

  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> days;  // day -> (ai, total)
  for (std::size_t i = 0; i < posts.size(); ++i) {
    auto& [ai, total] = days[datetime::utc_day(posts[i].timestamp)];
    if (verdicts[i] >= threshold) ++ai;
    ++total;
  }

  TemporalSeries series;
  for (const auto& [day, counts] : days) {
    series.daily.push_back({day,
                            static_cast<double>(counts.first) /
                                static_cast<double>(counts.second),
                            counts.second});
  }

  // OLS over (day offset, fraction), centered sums
  double x_mean = 0.0, y_mean = 0.0;
  std::int64_t day0 = series.daily.front().day;
  for (const DailyPoint& p : series.daily) {
    x_mean += static_cast<double>(p.day - day0);
    y_mean += p.ai_fraction;
  }
  auto n = static_cast<double>(series.daily.size());
  x_mean /= n;
  y_mean /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const DailyPoint& p : series.daily) {
    double dx = static_cast<double>(p.day - day0) - x_mean;
    sxy += dx * (p.ai_fraction - y_mean);
    sxx += dx * dx;
  }
  series.ols_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  series.ols_intercept = y_mean - series.ols_slope * x_mean;

  auto roll = [&series](int window) {
    std::vector<RollingPoint> out;
    std::int64_t first = series.daily.front().day;
    std::int64_t last = series.daily.back().day;
    std::size_t begin = 0, end = 0;  // daily indices with day in (d-window, d]
    for (std::int64_t d = first; d <= last; ++d) {
      while (end < series.daily.size() && series.daily[end].day <= d) ++end;
      while (begin < end && series.daily[begin].day <= d - window) ++begin;
      RollingPoint point{d, 0.0, begin < end};
      if (point.has_value) {
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) sum += series.daily[i].ai_fraction;
        point.value = sum / static_cast<double>(end - begin);
      }
      out.push_back(point);
    }
    return out;
  };
  series.rolling14 = roll(14);
  series.rolling30 = roll(30);
  return series;
}

// ---------------------------------------------------------------------------
// Engagement comparison
// ---------------------------------------------------------------------------

EngagementSummary engagement_compare(const std::vector<corpus::Post>& posts,
                                     const std::vector<double>& verdicts,
                                     double threshold) {
  if (posts.size() != verdicts.size())
    throw InvalidArgument("verdicts do not align with posts");

  struct Bucket {
    std::vector<double> likes, comments, collections;
  };
  std::map<std::pair<int, int>, Bucket> buckets;  // (domain, 0 human / 1 ai)
  for (std::size_t i = 0; i < posts.size(); ++i) {
    int group = verdicts[i] >= threshold ? 1 : 0;
    Bucket& b = buckets[{static_cast<int>(posts[i].domain), group}];
    b.likes.push_back(log1p10(posts[i].likes));
    b.comments.push_back(log1p10(posts[i].comments));
    b.collections.push_back(log1p10(posts[i].collections));
  }

  EngagementSummary summary;
  for (const auto& [key, bucket] : buckets) {
    EngagementGroup g;
    g.domain = static_cast<corpus::Domain>(key.first);
    g.group = key.second == 0 ? "human" : "ai";
    g.count = bucket.likes.size();
    g.likes = box_stats(bucket.likes);
    g.comments = box_stats(bucket.comments);
    g.collections = box_stats(bucket.collections);
    g.decline = g.likes.median - g.comments.median;
    summary.groups.push_back(std::move(g));
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Author tiers
// ---------------------------------------------------------------------------

std::string tier_name(Tier tier) {
  switch (tier) {
    case Tier::Traditional: return "Traditional";
    case Tier::Augmented: return "Augmented";
    case Tier::Reliant: return "Reliant";
  }
  return "Traditional";
}

AuthorTierReport author_tiers(const std::vector<corpus::Post>& posts,
                              const std::vector<double>& verdicts, double low,
                              double high, double threshold) {
  if (posts.size() != verdicts.size())
    throw InvalidArgument("verdicts do not align with posts");
  if (!(low < high)) throw InvalidArgument("tier thresholds must satisfy low < high");

  struct Acc {
    std::size_t n = 0, ai = 0;
    double log_likes = 0.0, log_comments = 0.0, log_collections = 0.0;
  };
  std::map<std::string, Acc> by_author;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (!posts[i].author_id) continue;
    Acc& acc = by_author[*posts[i].author_id];
    ++acc.n;
    if (verdicts[i] >= threshold) ++acc.ai;
    acc.log_likes += log1p10(posts[i].likes);
    acc.log_comments += log1p10(posts[i].comments);
    acc.log_collections += log1p10(posts[i].collections);
  }

  AuthorTierReport report;
  struct TierAcc {
    std::size_t authors = 0, posts = 0;
    double log_likes = 0.0, log_comments = 0.0, log_collections = 0.0;
  };
  std::array<TierAcc, 3> acc{};
  for (const auto& [author_id, a] : by_author) {
    if (a.n < 4) continue;  // minimum of four posts
    double ratio = static_cast<double>(a.ai) / static_cast<double>(a.n);
    Tier tier = ratio <= low    ? Tier::Traditional
                : ratio >= high ? Tier::Reliant
                                : Tier::Augmented;
    report.authors.push_back({author_id, a.n, ratio, tier});
    TierAcc& t = acc[static_cast<std::size_t>(tier)];
    ++t.authors;
    t.posts += a.n;
    t.log_likes += a.log_likes;
    t.log_comments += a.log_comments;
    t.log_collections += a.log_collections;
  }

  if (report.authors.empty()) {
    report.note = "no author has the minimum of four posts";
    return report;
  }
  auto total = static_cast<double>(report.authors.size());
  for (std::size_t k = 0; k < 3; ++k) {
    TierStats& out = report.tiers[k];
    out.n_authors = acc[k].authors;
    out.share = static_cast<double>(acc[k].authors) / total;
    if (acc[k].posts > 0) {
      auto posts_n = static_cast<double>(acc[k].posts);
      out.mean_log_likes = acc[k].log_likes / posts_n;
      out.mean_log_comments = acc[k].log_comments / posts_n;
      out.mean_log_collections = acc[k].log_collections / posts_n;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Feature correlations
// ---------------------------------------------------------------------------

double CorrelationReport::at(std::size_t i, std::size_t j) const {
  if (i == j) throw InvalidArgument("self-correlation is not emitted");
  if (i > j) std::swap(i, j);
  std::size_t offset = i * (2 * n_features - i - 1) / 2 + (j - i - 1);
  return r[offset];
}

CorrelationReport correlation_report(const features::FeatureMatrix& matrix) {
  std::size_t n_rows = matrix.rows.size();
  if (n_rows < 3) throw InvalidArgument("correlation needs at least 3 rows");
  std::size_t width = matrix.width();

  std::vector<double> mean(width, 0.0);
  for (const auto& row : matrix.rows)
    for (std::size_t c = 0; c < width; ++c) mean[c] += row.values[c];
  for (double& m : mean) m /= static_cast<double>(n_rows);

  // a column is zero-variance iff every value is identical; the summed
  // squared deviations can pick up rounding dust, so flag by min == max
  std::vector<double> var(width, 0.0);
  std::vector<bool> constant(width, true);
  for (const auto& row : matrix.rows)
    for (std::size_t c = 0; c < width; ++c) {
      double d = row.values[c] - mean[c];
      var[c] += d * d;
      if (row.values[c] != matrix.rows.front().values[c]) constant[c] = false;
    }

  CorrelationReport report;
  report.n_features = width;
  report.n_pairs = width * (width - 1) / 2;
  for (std::size_t c = 0; c < width; ++c)
    if (constant[c]) report.zero_variance_columns.push_back(c);

  report.r.reserve(report.n_pairs);
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = i + 1; j < width; ++j) {
      double value = 0.0;
      if (!constant[i] && !constant[j]) {
        double cov = 0.0;
        for (const auto& row : matrix.rows)
          cov += (row.values[i] - mean[i]) * (row.values[j] - mean[j]);
        value = cov / std::sqrt(var[i] * var[j]);
        value = std::clamp(value, -1.0, 1.0);
      }
      report.r.push_back(value);
    }
  }

  double sum = 0.0;
  for (double value : report.r) {
    double a = std::abs(value);
    sum += a;
    if (a < 0.3)
      ++report.weak_count;
    else if (a <= 0.7)
      ++report.medium_count;
    else
      ++report.strong_count;
    auto bin = std::min<std::size_t>(19, static_cast<std::size_t>(a * 20.0));
    ++report.histogram[bin];
  }
  auto n_pairs = static_cast<double>(report.n_pairs);
  report.mean_abs_r = sum / n_pairs;
  double ss = 0.0;
  for (double value : report.r) {
    double d = std::abs(value) - report.mean_abs_r;
    ss += d * d;
  }
  report.std_abs_r = std::sqrt(ss / n_pairs);
  return report;
}

// ---------------------------------------------------------------------------
// Ablation study
// ---------------------------------------------------------------------------

namespace {

features::FeatureMatrix select_matrix_rows(const features::FeatureMatrix& matrix,
                                           const std::vector<std::size_t>& idx) {
  features::FeatureMatrix out;
  out.registry_version = matrix.registry_version;
  out.rows.reserve(idx.size());
  out.labels.reserve(idx.size());
  for (std::size_t i : idx) {
    out.rows.push_back(matrix.rows[i]);
    out.labels.push_back(matrix.labels[i]);
  }
  return out;
}

}  // namespace

std::string task_label(const std::string& label, const std::string& task) {
  if (task != "binary" && task != "provider" && task != "model")
    throw InvalidArgument("unknown task \"" + task + "\"");
  if (label.rfind("ai:", 0) != 0) return label;
  std::string rest = label.substr(3);
  if (task == "binary") return "ai";
  if (task == "provider") return rest.substr(0, rest.find('/'));
  return rest;  // model task keeps provider/model
}

AblationReport ablation_study(const features::FeatureMatrix& matrix,
                              const gbdt::TrainConfig& config) {
  if (matrix.rows.empty()) throw InvalidArgument("cannot run ablation on an empty matrix");
  for (const std::string& label : matrix.labels)
    if (label == "unlabeled")
      throw InvalidArgument("ablation needs labeled rows; route unlabeled posts elsewhere");

  AblationReport report;
  for (const char* task : {"binary", "provider", "model"}) {
    std::set<std::string> classes;
    for (const std::string& label : matrix.labels) classes.insert(task_label(label, task));
    if (classes.size() >= 2) report.tasks.push_back(task);
  }
  if (report.tasks.empty())
    throw InvalidArgument("labels support no 2-class task");

  auto [train_idx, test_idx] =
      stratified_split_indices(matrix.labels, 0.8, rng::derive_seed(config.seed, "ablation"));

  std::vector<std::pair<std::string, features::FeatureMatrix>> variants;
  variants.emplace_back("full", matrix);
  for (int d = 0; d < rubric::kDimensionCount; ++d) {
    auto dim = static_cast<rubric::Dimension>(d);
    variants.emplace_back(rubric::dimension_name(dim), features::ablate(matrix, dim));
  }

  for (const auto& [variant, variant_matrix] : variants) {
    AblationRow row;
    row.variant = variant;
    features::FeatureMatrix train_m = select_matrix_rows(variant_matrix, train_idx);
    features::FeatureMatrix test_m = select_matrix_rows(variant_matrix, test_idx);
    for (const std::string& task : report.tasks) {
      features::FeatureMatrix tr = train_m, te = test_m;
      for (std::string& label : tr.labels) label = task_label(label, task);
      for (std::string& label : te.labels) label = task_label(label, task);
      gbdt::Ensemble model = gbdt::train(tr, config);
      row.macro_f1[task] = gbdt::evaluate(model, te).macro_f1;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Zero-shot generalization
// ---------------------------------------------------------------------------

ZeroShotResult zero_shot_eval(const features::FeatureMatrix& matrix,
                              const std::vector<std::string>& holdout_models,
                              const gbdt::TrainConfig& config, double split_ratio) {
  if (matrix.rows.empty()) throw InvalidArgument("cannot evaluate an empty matrix");
  if (holdout_models.empty()) throw InvalidArgument("no holdout models given");
  if (!(split_ratio > 0.0) || !(split_ratio < 1.0))
    throw InvalidArgument("split ratio must be in (0, 1)");

  std::set<std::string> holdout(holdout_models.begin(), holdout_models.end());
  std::set<std::string> present_models;

  // provider class per row; holdout rows set aside
  std::vector<std::size_t> seen_idx, holdout_idx;
  std::vector<std::string> seen_class;
  std::vector<std::string> holdout_provider;
  std::map<std::string, std::set<std::string>> provider_training_models;
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    const std::string& label = matrix.labels[i];
    if (label == "unlabeled")
      throw InvalidArgument("zero-shot needs labeled rows; row " +
                            matrix.rows[i].post_id + " is unlabeled");
    if (label.rfind("ai:", 0) != 0) {
      seen_idx.push_back(i);
      seen_class.push_back(label);  // typically "human"
      continue;
    }
    std::string model = label.substr(3);  // provider/model
    std::string provider = model.substr(0, model.find('/'));
    present_models.insert(model);
    if (holdout.count(model)) {
      holdout_idx.push_back(i);
      holdout_provider.push_back(provider);
    } else {
      seen_idx.push_back(i);
      seen_class.push_back(provider);
      provider_training_models[provider].insert(model);
    }
  }

  for (const std::string& model : holdout) {
    if (!present_models.count(model))
      throw InvalidArgument("holdout model \"" + model + "\" is not in the corpus");
    std::string provider = model.substr(0, model.find('/'));
    if (provider_training_models[provider].empty())
      throw InvalidArgument("provider \"" + provider +
                            "\" has no remaining training model");
  }

  auto [train_part, test_part] =
      stratified_split_indices(seen_class, split_ratio, rng::derive_seed(config.seed, "zeroshot"));

  features::FeatureMatrix train_m, test_m;
  train_m.registry_version = test_m.registry_version = matrix.registry_version;
  ZeroShotResult result;
  for (std::size_t i : train_part) {
    train_m.rows.push_back(matrix.rows[seen_idx[i]]);
    train_m.labels.push_back(seen_class[i]);
    result.train_ids.push_back(matrix.rows[seen_idx[i]].post_id);
  }
  for (std::size_t i : test_part) {
    test_m.rows.push_back(matrix.rows[seen_idx[i]]);
    test_m.labels.push_back(seen_class[i]);
  }

  gbdt::Ensemble model = gbdt::train(train_m, config);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_m.rows.size(); ++i)
    if (gbdt::predict(model, test_m.rows[i].values) == test_m.labels[i]) ++correct;
  result.seen_accuracy =
      test_m.rows.empty() ? 0.0
                          : static_cast<double>(correct) /
                                static_cast<double>(test_m.rows.size());

  std::size_t recalled = 0;
  for (std::size_t i = 0; i < holdout_idx.size(); ++i) {
    result.holdout_ids.push_back(matrix.rows[holdout_idx[i]].post_id);
    if (gbdt::predict(model, matrix.rows[holdout_idx[i]].values) == holdout_provider[i])
      ++recalled;
  }
  result.unseen_recall =
      holdout_idx.empty() ? 0.0
                          : static_cast<double>(recalled) /
                                static_cast<double>(holdout_idx.size());
  return result;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

namespace {

json box_to_json(const BoxStats& box) {
  return {{"q1", box.q1},
          {"median", box.median},
          {"q3", box.q3},
          {"whisker_low", box.whisker_low},
          {"whisker_high", box.whisker_high}};
}

json rolling_to_json(const std::vector<RollingPoint>& points) {
  json arr = json::array();
  for (const RollingPoint& p : points) {
    json item = {{"date", datetime::format_day(p.day)}};
    if (p.has_value)
      item["value"] = p.value;
    else
      item["value"] = nullptr;
    arr.push_back(std::move(item));
  }
  return arr;
}

}  // namespace

json temporal_to_json(const TemporalSeries& series) {
  json daily = json::array();
  for (const DailyPoint& p : series.daily) {
    daily.push_back({{"date", datetime::format_day(p.day)},
                     {"ai_fraction", p.ai_fraction},
                     {"n_posts", p.n_posts}});
  }
  return {{"daily", std::move(daily)},
          {"rolling14", rolling_to_json(series.rolling14)},
          {"rolling30", rolling_to_json(series.rolling30)},
          {"ols_slope", series.ols_slope},
          {"ols_intercept", series.ols_intercept}};
}

json engagement_to_json(const EngagementSummary& summary) {
  json groups = json::array();
  for (const EngagementGroup& g : summary.groups) {
    groups.push_back({{"domain", corpus::domain_name(g.domain)},
                      {"group", g.group},
                      {"count", g.count},
                      {"likes", box_to_json(g.likes)},
                      {"comments", box_to_json(g.comments)},
                      {"collections", box_to_json(g.collections)},
                      {"decline", g.decline}});
  }
  return {{"groups", std::move(groups)}};
}

json tiers_to_json(const AuthorTierReport& report) {
  json authors = json::array();
  for (const AuthorStat& a : report.authors) {
    authors.push_back({{"author_id", a.author_id},
                       {"n_posts", a.n_posts},
                       {"ai_ratio", a.ai_ratio},
                       {"tier", tier_name(a.tier)}});
  }
  json tiers;
  for (std::size_t k = 0; k < 3; ++k) {
    const TierStats& t = report.tiers[k];
    tiers[tier_name(static_cast<Tier>(k))] = {
        {"n_authors", t.n_authors},
        {"share", t.share},
        {"mean_log_likes", t.mean_log_likes},
        {"mean_log_comments", t.mean_log_comments},
        {"mean_log_collections", t.mean_log_collections}};
  }
  json j = {{"authors", std::move(authors)}, {"tiers", std::move(tiers)}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

json correlation_to_json(const CorrelationReport& report,
                         const std::vector<std::string>& feature_ids) {
  if (feature_ids.size() != report.n_features)
    throw InvalidArgument("feature id list does not match the report width");
  json pairs = json::array();
  std::size_t offset = 0;
  for (std::size_t i = 0; i < report.n_features; ++i) {
    for (std::size_t j = i + 1; j < report.n_features; ++j, ++offset) {
      pairs.push_back(
          {{"a", feature_ids[i]}, {"b", feature_ids[j]}, {"r", report.r[offset]}});
    }
  }
  json zero = json::array();
  for (std::size_t c : report.zero_variance_columns) zero.push_back(feature_ids[c]);
  return {{"n_pairs", report.n_pairs},
          {"mean_abs_r", report.mean_abs_r},
          {"std_abs_r", report.std_abs_r},
          {"weak_count", report.weak_count},
          {"medium_count", report.medium_count},
          {"strong_count", report.strong_count},
          {"histogram", report.histogram},
          {"zero_variance_columns", std::move(zero)},
          {"pairs", std::move(pairs)}};
}

json ablation_to_json(const AblationReport& report) {
  json rows = json::array();
  for (const AblationRow& row : report.rows) {
    json f1;
    for (const auto& [task, value] : row.macro_f1) f1[task] = value;
    rows.push_back({{"variant", row.variant}, {"macro_f1", std::move(f1)}});
  }
  return {{"tasks", report.tasks}, {"rows", std::move(rows)}};
}

json zeroshot_to_json(const ZeroShotResult& result) {
  return {{"seen_accuracy", result.seen_accuracy},
          {"unseen_recall", result.unseen_recall},
          {"n_train_rows", result.train_ids.size()},
          {"n_holdout_rows", result.holdout_ids.size()},
          {"train_ids", result.train_ids},
          {"holdout_ids", result.holdout_ids}};
}

}  // namespace plad::analysis
