// Acceptance gate. Standalone binary (no doctest): runs eight release
// criteria end to end, prints one PASS/FAIL line each with its wall-time
// budget, and exits nonzero unless all eight hold. Tolerances are pinned
// here on purpose; loosening them is a release decision, not a test edit.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nlohmann/json.hpp"
#include "plad/analysis.hpp"
#include "plad/cli.hpp"
#include "plad/corpus.hpp"
#include "plad/explain.hpp"
#include "plad/features.hpp"
#include "plad/gbdt.hpp"
#include "plad/rng.hpp"
#include "plad/textstats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plad;

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Collects failure messages; a criterion passes when none accumulate.
struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol))
      failures.push_back(what + ": got " + fmt(got) + ", want " + fmt(want) + " +/- " + fmt(tol));
  }
  void at_least(double got, double bound, const std::string& what) {
    if (!(got >= bound))
      failures.push_back(what + ": got " + fmt(got) + ", need >= " + fmt(bound));
  }
};

// ---------------------------------------------------------------------------
// Scratch space and CLI plumbing
// ---------------------------------------------------------------------------

fs::path scratch_root() {
  static fs::path root = [] {
    fs::path p = fs::temp_directory_path() / "plad-acceptance";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = scratch_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Chdir {
  fs::path old = fs::current_path();
  explicit Chdir(const fs::path& to) { fs::current_path(to); }
  ~Chdir() { fs::current_path(old); }
};

void cli_ok(Check& c, const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  if (code != 0)
    c.failures.push_back("command '" + args.front() + "' exited " + std::to_string(code) + ": " +
                         err.str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("missing file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json slurp_json(const fs::path& path) { return json::parse(slurp(path)); }

// ---------------------------------------------------------------------------
// Synthetic matrices
// ---------------------------------------------------------------------------

features::FeatureMatrix make_matrix(std::vector<std::vector<double>> rows,
                                    std::vector<std::string> labels = {}) {
  features::FeatureMatrix m;
  m.registry_version = features::kRegistryVersion;
  if (labels.empty()) labels.assign(rows.size(), "row");
  m.labels = std::move(labels);
  for (std::size_t i = 0; i < rows.size(); ++i)
    m.rows.push_back({"r" + std::to_string(i), std::move(rows[i])});
  return m;
}

features::FeatureMatrix take_rows(const features::FeatureMatrix& m,
                                  const std::vector<std::size_t>& idx) {
  features::FeatureMatrix out;
  out.registry_version = m.registry_version;
  for (std::size_t i : idx) {
    out.rows.push_back(m.rows[i]);
    if (!m.labels.empty()) out.labels.push_back(m.labels[i]);
  }
  return out;
}

/// Gaussian blob per class center, unit-variance noise scaled by `noise`.
features::FeatureMatrix blob_matrix(const std::vector<std::vector<double>>& centers,
                                    std::size_t per_class, double noise, std::uint64_t seed) {
  rng::Engine eng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> x(centers[k].size());
      for (std::size_t d = 0; d < x.size(); ++d) x[d] = centers[k][d] + noise * rng::normal(eng);
      rows.push_back(std::move(x));
      labels.push_back("c" + std::to_string(k));
    }
  }
  return make_matrix(std::move(rows), std::move(labels));
}

// Trainable matrices must be full registry width, so blob centers carry the
// signal on a prefix and zeros (pure noise after sampling) everywhere else.
constexpr std::size_t kFullWidth = 31;

std::vector<std::vector<double>> binary_centers() {
  std::vector<std::vector<double>> centers(2, std::vector<double>(kFullWidth, 0.0));
  for (std::size_t d = 0; d < 8; ++d) {
    centers[0][d] = 1.0;
    centers[1][d] = -1.0;
  }
  return centers;
}

std::vector<std::vector<double>> six_class_centers() {
  std::vector<std::vector<double>> centers(6, std::vector<double>(kFullWidth, 0.0));
  for (std::size_t k = 0; k < 6; ++k) {
    centers[k][k] = 2.8;
    centers[k][6 + k] = 2.8;
  }
  return centers;
}

// ---------------------------------------------------------------------------
// Text fixtures
// ---------------------------------------------------------------------------

std::string sentences_of_lengths(const std::vector<int>& lengths) {
  static const char* kHanzi[] = {"一", "二", "三", "四", "五", "六", "七", "八", "九", "十",
                                 "天", "地", "人", "日", "月", "山", "水", "火", "木", "金"};
  std::string text;
  int cursor = 0;
  for (int len : lengths) {
    for (int i = 0; i < len - 1; ++i) text += kHanzi[cursor++ % 20];
    text += "。";
  }
  return text;
}

/// Random document over a mixed CJK/Latin/punctuation/emoji pool. The leading
/// ideograph guarantees at least one word token.
std::string random_document(rng::Engine& eng) {
  static const char* kPieces[] = {"我",  "你",   "好",  "天",  "地",  "the", "cat", "ok42",
                                  "。",  "！",   "？",  "，",  "…",   "😊",  "🎉",  " ",
                                  "\n",  "\n\n", "x",   "山",  "水"};
  std::string text = "好";
  std::size_t n = 1 + rng::bounded(eng, 60);
  for (std::size_t i = 0; i < n; ++i) text += kPieces[rng::bounded(eng, 21)];
  return text;
}

// ---------------------------------------------------------------------------
// Random feasible ensembles (attribution trials)
// ---------------------------------------------------------------------------

gbdt::Node split_node(int feature, double threshold, int left, int right) {
  gbdt::Node n;
  n.feature = feature;
  n.threshold = threshold;
  n.left = left;
  n.right = right;
  return n;
}

gbdt::Node leaf_node(double value) {
  gbdt::Node n;
  n.value = value;
  return n;
}

gbdt::Ensemble regressor_shell(std::size_t n_features, double base) {
  gbdt::Ensemble e;
  e.task = gbdt::Task::Regression;
  e.base_score = {base};
  e.n_features = n_features;
  return e;
}

/// Random tree with every leaf region non-empty: thresholds are drawn inside
/// the box accumulated along the path, and each leaf drops its box midpoint
/// into bg_rows so the background covers every node. Splits only use features
/// below `usable`, so features at usable..width-1 are exact null players.
gbdt::Tree random_tree(rng::Engine& eng, std::size_t width, std::size_t usable, int depth,
                       std::vector<std::vector<double>>& bg_rows) {
  gbdt::Tree tree;
  std::vector<double> lo(width, -3.0), hi(width, 3.0);
  auto build = [&](auto&& self, int level) -> int {
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    if (level >= depth || rng::unit(eng) < 0.25) {
      tree.nodes[id] = leaf_node(rng::normal(eng));
      std::vector<double> row(width);
      for (std::size_t c = 0; c < width; ++c) row[c] = (lo[c] + hi[c]) * 0.5;
      bg_rows.push_back(std::move(row));
      return id;
    }
    auto feature = static_cast<std::size_t>(rng::bounded(eng, usable));
    double threshold = lo[feature] + (hi[feature] - lo[feature]) * (0.25 + 0.5 * rng::unit(eng));
    double saved = hi[feature];
    hi[feature] = threshold;
    int left = self(self, level + 1);
    hi[feature] = saved;
    saved = lo[feature];
    lo[feature] = threshold;
    int right = self(self, level + 1);
    lo[feature] = saved;
    tree.nodes[id] = split_node(static_cast<int>(feature), threshold, left, right);
    return id;
  };
  build(build, 0);
  return tree;
}

struct Trial {
  gbdt::Ensemble ensemble;
  features::FeatureMatrix background;
};

Trial random_trial(rng::Engine& eng, std::size_t width, std::size_t usable, std::size_t n_trees,
                   int max_depth, double base) {
  Trial trial;
  trial.ensemble = regressor_shell(width, base);
  std::vector<std::vector<double>> bg_rows;
  for (std::size_t t = 0; t < n_trees; ++t) {
    int depth = 1 + static_cast<int>(rng::bounded(eng, static_cast<std::uint64_t>(max_depth)));
    trial.ensemble.trees.push_back(random_tree(eng, width, usable, depth, bg_rows));
  }
  for (int i = 0; i < 12; ++i) {
    std::vector<double> row(width);
    for (double& v : row) v = -3.0 + 6.0 * rng::unit(eng);
    bg_rows.push_back(std::move(row));
  }
  trial.background = make_matrix(std::move(bg_rows));
  return trial;
}

double margin_mean(const gbdt::Ensemble& e, const features::FeatureMatrix& bg,
                   std::size_t output) {
  double total = 0.0;
  for (const auto& row : bg.rows) total += gbdt::margins(e, row.values)[output];
  return total / static_cast<double>(bg.rows.size());
}

// ---------------------------------------------------------------------------
// Analysis oracle mirrors
// ---------------------------------------------------------------------------

double oracle_quantile(const std::vector<double>& sorted, double p) {
  double h = static_cast<double>(sorted.size() - 1) * p;
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double oracle_log1p10(long long count) { return std::log10(1.0 + static_cast<double>(count)); }

corpus::Post basic_post(std::string id, std::int64_t timestamp) {
  corpus::Post post;
  post.id = std::move(id);
  post.title = "t";
  post.content = "内容在这里。";
  post.timestamp = timestamp;
  post.domain = corpus::Domain::Travel;
  post.authorship = corpus::Authorship::unlabeled();
  return post;
}

// ---------------------------------------------------------------------------
// Criterion 1: statistical features against hand-computed documents, plus a
// fuzz sweep keeping every feature finite and inside its documented range.
// ---------------------------------------------------------------------------

void criterion_textstats(Check& c) {
  c.near(textstats::type_token_ratio(textstats::tokenize("我爱我家")), 0.75, 1e-12,
         "type-token ratio of a 4-token document with one repeat");
  c.near(textstats::word_frequency_entropy(textstats::tokenize("a a b c")), 1.5, 1e-12,
         "entropy of counts {2,1,1}");
  c.near(textstats::sentence_burstiness(textstats::tokenize(sentences_of_lengths({2, 10}))), -0.2,
         1e-12, "burstiness of sentence lengths {2,10}");
  c.near(textstats::prosodic_rhythm_consistency(
             textstats::tokenize(sentences_of_lengths({4, 8, 4, 8}))),
         1.0 / 3.0, 1e-12, "rhythm consistency of alternating lengths {4,8,4,8}");
  c.near(textstats::punctuation_features("你好，世界。").first, 1.0 / 3.0, 1e-12,
         "punctuation ratio of 2 marks in 6 chars");
  c.near(textstats::phrasal_repetition_frequency(textstats::tokenize("a b a b a")), 1.0, 1e-12,
         "phrasal repetition of a fully periodic document");

  rng::Engine eng(20260816);
  std::size_t violations = 0;
  std::string first_bad;
  auto in_range = [&](double v, double lo, double hi, const char* what,
                      const std::string& text) {
    if (std::isfinite(v) && v >= lo && v <= hi) return;
    if (violations++ == 0)
      first_bad = std::string(what) + " = " + fmt(v) + " on " + json(text).dump();
  };
  const double kBig = 1e6;
  for (int iter = 0; iter < 10000; ++iter) {
    std::string text = random_document(eng);
    textstats::StatFeatures f = textstats::stat_features(text);
    in_range(f.type_token_ratio, 0.0, 1.0, "type_token_ratio", text);
    in_range(f.word_frequency_entropy, 0.0, kBig, "word_frequency_entropy", text);
    in_range(f.hapax_ratio, 0.0, 1.0, "hapax_ratio", text);
    in_range(f.sentence_burstiness, -1.0, 1.0, "sentence_burstiness", text);
    in_range(f.prosodic_rhythm_consistency, 0.0, 1.0, "prosodic_rhythm_consistency", text);
    in_range(f.phrasal_repetition_frequency, 0.0, 1.0, "phrasal_repetition_frequency", text);
    in_range(f.emoji_density, 0.0, 1.0, "emoji_density", text);
    in_range(f.emoji_position_entropy, 0.0, std::log2(3.0) + 1e-9, "emoji_position_entropy",
             text);
    in_range(f.punctuation_ratio, 0.0, 1.0, "punctuation_ratio", text);
    in_range(f.punctuation_diversity, 0.0, kBig, "punctuation_diversity", text);
    in_range(f.adjacent_sentence_overlap, 0.0, 1.0, "adjacent_sentence_overlap", text);
    in_range(f.paragraph_length_variation, 0.0, kBig, "paragraph_length_variation", text);
    in_range(f.concessive_marker_ratio, 0.0, kBig, "concessive_marker_ratio", text);
  }
  c.require(violations == 0, "fuzz sweep: " + std::to_string(violations) +
                                 " out-of-range features; first: " + first_bad);
}

// ---------------------------------------------------------------------------
// Criterion 2: the 31-column registry, its dimension arithmetic, and the
// 465-pair correlation surface.
// ---------------------------------------------------------------------------

void criterion_registry(Check& c) {
  const features::Registry& reg = features::default_registry();
  c.require(reg.version == features::kRegistryVersion, "registry version string");
  c.require(reg.size() == 31, "registry lists 31 features, got " + std::to_string(reg.size()));

  std::set<std::string> unique;
  std::map<rubric::Dimension, std::size_t> tally;
  bool contiguous = true;
  for (std::size_t i = 0; i < reg.entries.size(); ++i) {
    unique.insert(reg.entries[i].id);
    ++tally[reg.entries[i].dimension];
    contiguous = contiguous && reg.entries[i].index == static_cast<int>(i);
  }
  c.require(unique.size() == reg.size(), "feature ids are unique");
  c.require(contiguous, "registry indices are contiguous from 0");
  c.require(tally[rubric::Dimension::Emotional] == 8, "Emotional dimension holds 8 features");
  c.require(tally[rubric::Dimension::Cognitive] == 7, "Cognitive dimension holds 7 features");
  c.require(tally[rubric::Dimension::Lexical] == 9, "Lexical dimension holds 9 features");
  c.require(tally[rubric::Dimension::Cohesion] == 7, "Cohesion dimension holds 7 features");

  rng::Engine eng(11);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 60; ++i) {
    std::vector<double> x(31);
    for (double& v : x) v = rng::normal(eng);
    rows.push_back(std::move(x));
  }
  features::FeatureMatrix noise = make_matrix(std::move(rows));
  analysis::CorrelationReport rep = analysis::correlation_report(noise);
  c.require(rep.n_features == 31, "correlation over 31 features");
  c.require(rep.n_pairs == 465 && rep.r.size() == 465,
            "465 feature pairs, got " + std::to_string(rep.n_pairs));
  json cj = analysis::correlation_to_json(rep, reg.ids());
  c.require(cj["pairs"].size() == 465, "serialized correlation lists 465 pairs");

  const std::array<std::pair<rubric::Dimension, std::size_t>, 4> widths = {{
      {rubric::Dimension::Emotional, 23},
      {rubric::Dimension::Cognitive, 24},
      {rubric::Dimension::Lexical, 22},
      {rubric::Dimension::Cohesion, 24},
  }};
  for (const auto& [dim, want] : widths) {
    features::FeatureMatrix ablated = features::ablate(noise, dim);
    c.require(ablated.width() == want,
              std::string("ablating ") + rubric::dimension_name(dim) + " leaves " +
                  std::to_string(want) + " columns, got " + std::to_string(ablated.width()));
    features::Registry cut = features::ablated_registry(reg, {dim});
    c.require(cut.size() == want, std::string("ablated registry for ") +
                                      rubric::dimension_name(dim) + " lists " +
                                      std::to_string(want) + " ids");
  }
}

// ---------------------------------------------------------------------------
// Criterion 3: boosting quality on separable synthetics, monotone training
// loss, and bit-identical retraining.
// ---------------------------------------------------------------------------

void criterion_gbdt(Check& c) {
  features::FeatureMatrix binary = blob_matrix(binary_centers(), 500, 1.0, 42);
  auto [train_idx, test_idx] = analysis::stratified_split_indices(binary.labels, 0.8, 42);
  features::FeatureMatrix train_m = take_rows(binary, train_idx);
  features::FeatureMatrix test_m = take_rows(binary, test_idx);

  gbdt::TrainConfig cfg;
  cfg.rounds = 100;
  cfg.max_depth = 4;
  cfg.seed = 42;
  gbdt::TrainReport report;
  gbdt::Ensemble model = gbdt::train(train_m, cfg, &report);
  gbdt::EvalReport eval = gbdt::evaluate(model, test_m);
  c.at_least(eval.accuracy, 98.0, "binary blob accuracy (percent)");

  bool monotone = true;
  for (std::size_t i = 1; i < report.loss_trace.size(); ++i)
    monotone = monotone && report.loss_trace[i] <= report.loss_trace[i - 1] + 1e-9;
  c.require(!report.loss_trace.empty() && monotone, "training loss is non-increasing");

  features::FeatureMatrix multi = blob_matrix(six_class_centers(), 200, 1.0, 43);
  auto [mtrain_idx, mtest_idx] = analysis::stratified_split_indices(multi.labels, 0.8, 43);
  gbdt::TrainConfig mcfg;
  mcfg.rounds = 100;
  mcfg.max_depth = 4;
  mcfg.seed = 43;
  gbdt::Ensemble mmodel = gbdt::train(take_rows(multi, mtrain_idx), mcfg);
  gbdt::EvalReport meval = gbdt::evaluate(mmodel, take_rows(multi, mtest_idx));
  c.at_least(meval.macro_f1, 90.0, "six-class blob macro-F1 (percent)");

  fs::path dir = fresh_dir("c3-determinism");
  gbdt::Ensemble again = gbdt::train(train_m, cfg);
  gbdt::save_ensemble(model, (dir / "a.json").string());
  gbdt::save_ensemble(again, (dir / "b.json").string());
  c.require(slurp(dir / "a.json") == slurp(dir / "b.json"),
            "retraining with one config yields a byte-identical model file");
}

// ---------------------------------------------------------------------------
// Criterion 4: path attributions equal the factorial Shapley oracle on random
// feasible ensembles; null players get exactly zero; local accuracy holds on
// trained models of every task.
// ---------------------------------------------------------------------------

void criterion_shap(Check& c) {
  rng::Engine eng(2026);
  double worst_diff = 0.0, worst_local = 0.0, worst_base = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t width = 2 + rng::bounded(eng, 15);
    std::size_t n_trees = 1 + rng::bounded(eng, 3);
    Trial t = random_trial(eng, width, width, n_trees, 4, rng::normal(eng));
    std::vector<double> x(width);
    for (double& v : x) v = -3.0 + 6.0 * rng::unit(eng);

    std::vector<explain::AttributionResult> fast =
        explain::shap_values(t.ensemble, {"t", x}, t.background);
    std::vector<std::vector<double>> oracle =
        explain::brute_force_shap(t.ensemble, x, t.background);
    double phi_sum = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      worst_diff = std::max(worst_diff, std::abs(fast[0].phi[i] - oracle[0][i]));
      phi_sum += fast[0].phi[i];
    }
    double margin = gbdt::margins(t.ensemble, x)[0];
    worst_local = std::max(worst_local, std::abs(fast[0].base_value + phi_sum - margin));
    worst_base =
        std::max(worst_base, std::abs(fast[0].base_value - margin_mean(t.ensemble, t.background, 0)));
  }
  c.require(worst_diff < 1e-9,
            "1000 random ensembles vs factorial oracle, worst |diff| = " + fmt(worst_diff));
  c.require(worst_local < 1e-9, "local accuracy on random ensembles, worst = " + fmt(worst_local));
  c.require(worst_base < 1e-9,
            "base value equals background mean margin, worst = " + fmt(worst_base));

  bool null_exact = true;
  for (int trial = 0; trial < 200 && null_exact; ++trial) {
    std::size_t width = 3 + rng::bounded(eng, 14);
    Trial t = random_trial(eng, width, width - 1, 1 + rng::bounded(eng, 2), 3, rng::normal(eng));
    std::vector<double> x(width);
    for (double& v : x) v = -3.0 + 6.0 * rng::unit(eng);
    std::vector<explain::AttributionResult> fast =
        explain::shap_values(t.ensemble, {"t", x}, t.background);
    std::vector<std::vector<double>> oracle =
        explain::brute_force_shap(t.ensemble, x, t.background);
    null_exact = fast[0].phi[width - 1] == 0.0 && oracle[0][width - 1] == 0.0;
  }
  c.require(null_exact, "a never-split feature earns exactly zero attribution");

  // Trained models: every row of every output must satisfy the additive
  // identity against the model's own margins.
  double worst_trained = 0.0;
  auto sweep = [&](const gbdt::Ensemble& model, const features::FeatureMatrix& matrix) {
    std::vector<std::vector<explain::AttributionResult>> all =
        explain::shap_matrix(model, matrix, matrix);
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
      std::vector<double> margins = gbdt::margins(model, matrix.rows[r].values);
      for (std::size_t k = 0; k < all[r].size(); ++k) {
        const explain::AttributionResult& res = all[r][k];
        double total = res.base_value;
        for (double p : res.phi) total += p;
        worst_trained = std::max(worst_trained, std::abs(total - res.prediction));
        worst_trained = std::max(worst_trained, std::abs(res.prediction - margins[k]));
      }
    }
  };

  features::FeatureMatrix binary = blob_matrix(binary_centers(), 100, 1.0, 7);
  gbdt::TrainConfig bcfg;
  bcfg.rounds = 40;
  bcfg.max_depth = 4;
  bcfg.seed = 7;
  sweep(gbdt::train(binary, bcfg), binary);

  features::FeatureMatrix multi = blob_matrix(six_class_centers(), 40, 1.0, 9);
  gbdt::TrainConfig mcfg;
  mcfg.rounds = 25;
  mcfg.max_depth = 3;
  mcfg.seed = 9;
  sweep(gbdt::train(multi, mcfg), multi);

  rng::Engine reng(13);
  std::vector<std::vector<double>> rrows;
  std::vector<double> targets;
  for (int i = 0; i < 150; ++i) {
    std::vector<double> x(kFullWidth);
    for (double& v : x) v = rng::normal(reng);
    targets.push_back(0.3 + 2.0 * x[0] - x[3] + 0.5 * rng::normal(reng));
    rrows.push_back(std::move(x));
  }
  features::FeatureMatrix reg_matrix = make_matrix(std::move(rrows));
  gbdt::TrainConfig rcfg;
  rcfg.rounds = 40;
  rcfg.max_depth = 3;
  rcfg.seed = 13;
  sweep(gbdt::train_regressor(reg_matrix, targets, rcfg), reg_matrix);

  c.require(worst_trained < 1e-9,
            "local accuracy on trained binary/multiclass/regression models, worst = " +
                fmt(worst_trained));
}

// ---------------------------------------------------------------------------
// Criterion 5: the full pipeline on synthetic corpora. Default fixture must
// evaluate at >= 85% held-out accuracy; the lexical fixture must lose at
// least 5 macro-F1 points when the Lexical dimension is ablated.
// ---------------------------------------------------------------------------

void criterion_pipeline(Check& c) {
  {
    Chdir cd(fresh_dir("c5-default"));
    cli_ok(c, {"synth", "--count", "1000", "--seed", "42"});
    cli_ok(c, {"extract", "--corpus", "reports/corpus.jsonl", "--seed", "42"});
    cli_ok(c, {"train", "--rounds", "120", "--max-depth", "5", "--seed", "42"});
    cli_ok(c, {"evaluate", "--seed", "42"});
    if (!c.failures.empty()) return;
    json eval = slurp_json("reports/evaluate.json");
    c.at_least(eval["accuracy"].get<double>(), 85.0, "held-out accuracy (percent)");
  }
  {
    Chdir cd(fresh_dir("c5-lexical"));
    cli_ok(c, {"synth", "--fixture", "lexical", "--count", "250", "--seed", "42"});
    cli_ok(c, {"extract", "--corpus", "reports/corpus.jsonl", "--seed", "42"});
    cli_ok(c, {"analyze", "ablation", "--rounds", "60", "--max-depth", "4", "--seed", "42"});
    if (!c.failures.empty()) return;
    json ab = slurp_json("reports/analyze-ablation.json");
    double full = -1.0, cut = -1.0;
    for (const json& row : ab["rows"]) {
      if (row["variant"] == "full") full = row["macro_f1"]["binary"].get<double>();
      if (row["variant"] == "Lexical") cut = row["macro_f1"]["binary"].get<double>();
    }
    c.require(full >= 0.0 && cut >= 0.0, "ablation report carries full and Lexical variants");
    c.at_least(full - cut, 5.0, "macro-F1 drop from ablating the signal dimension (points)");
  }
}

// ---------------------------------------------------------------------------
// Criterion 6: zero-shot generalization. Train without three provider
// models; mean recall routing their posts to the right provider must beat
// twice the 3-class chance rate.
// ---------------------------------------------------------------------------

void criterion_zeroshot(Check& c) {
  Chdir cd(fresh_dir("c6-zeroshot"));
  cli_ok(c, {"synth", "--fixture", "providers", "--count", "250", "--seed", "42"});
  cli_ok(c, {"extract", "--corpus", "reports/corpus.jsonl", "--seed", "42"});
  if (!c.failures.empty()) return;

  features::FeatureMatrix matrix = features::load_matrix_csv("reports/matrix.csv");
  const std::vector<std::string> holdout = {"aurora/aurora-m", "breeze/breeze-m",
                                            "cinder/cinder-m"};
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    gbdt::TrainConfig cfg;
    cfg.rounds = 150;
    cfg.max_depth = 5;
    cfg.seed = seed;
    analysis::ZeroShotResult res = analysis::zero_shot_eval(matrix, holdout, cfg, 0.8);
    c.require(!res.holdout_ids.empty(), "holdout rows exist for seed " + std::to_string(seed));
    total += res.unseen_recall;
  }
  c.at_least(total / 5.0, 2.0 / 3.0,
             "mean unseen-model provider recall over seeds 1..5 (chance = 1/3)");
}

// ---------------------------------------------------------------------------
// Criterion 7: analysis outputs against independent oracles: rolling means,
// an exactly-solvable OLS ramp, boxplot quartiles, and tier boundaries.
// ---------------------------------------------------------------------------

void criterion_analysis(Check& c) {
  rng::Engine eng(77);
  double worst_roll = 0.0;
  bool shapes_ok = true, daily_ok = true;
  for (int series_i = 0; series_i < 1000 && shapes_ok && daily_ok; ++series_i) {
    std::int64_t day0 = 18300 + static_cast<std::int64_t>(rng::bounded(eng, 1500));
    std::size_t n_days = 1 + rng::bounded(eng, 90);
    std::vector<corpus::Post> posts;
    std::vector<double> verdicts;
    for (std::size_t d = 0; d < n_days; ++d) {
      std::size_t k = rng::bounded(eng, 4);
      for (std::size_t i = 0; i < k; ++i) {
        posts.push_back(basic_post("p" + std::to_string(posts.size()),
                                   (day0 + static_cast<std::int64_t>(d)) * 86400 +
                                       static_cast<std::int64_t>(rng::bounded(eng, 86400))));
        verdicts.push_back(rng::unit(eng));
      }
    }
    if (posts.empty()) {
      posts.push_back(basic_post("p0", day0 * 86400));
      verdicts.push_back(1.0);
    }

    analysis::TemporalSeries series = analysis::temporal_trend(posts, verdicts, 0.5);

    std::map<std::int64_t, std::pair<std::size_t, std::size_t>> days;
    for (std::size_t i = 0; i < posts.size(); ++i) {
      auto& [ai, n] = days[posts[i].timestamp / 86400];
      if (verdicts[i] >= 0.5) ++ai;
      ++n;
    }
    daily_ok = series.daily.size() == days.size();
    if (daily_ok) {
      std::size_t idx = 0;
      for (const auto& [day, counts] : days) {
        const analysis::DailyPoint& p = series.daily[idx++];
        daily_ok = daily_ok && p.day == day && p.n_posts == counts.second &&
                   p.ai_fraction == static_cast<double>(counts.first) /
                                        static_cast<double>(counts.second);
      }
    }

    auto naive_roll = [&](int window, const std::vector<analysis::RollingPoint>& got) {
      std::int64_t first = days.begin()->first;
      std::int64_t last = days.rbegin()->first;
      if (got.size() != static_cast<std::size_t>(last - first + 1)) {
        shapes_ok = false;
        return;
      }
      for (std::int64_t d = first; d <= last; ++d) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& [day, counts] : days) {
          if (day > d - window && day <= d) {
            sum += static_cast<double>(counts.first) / static_cast<double>(counts.second);
            ++n;
          }
        }
        const analysis::RollingPoint& point = got[static_cast<std::size_t>(d - first)];
        if (point.day != d || point.has_value != (n > 0)) {
          shapes_ok = false;
          return;
        }
        if (n > 0)
          worst_roll =
              std::max(worst_roll, std::abs(point.value - sum / static_cast<double>(n)));
      }
    };
    naive_roll(14, series.rolling14);
    naive_roll(30, series.rolling30);
  }
  c.require(daily_ok, "daily fractions match a direct per-day tally");
  c.require(shapes_ok, "rolling series cover every day of the observed range");
  c.require(worst_roll <= 1e-12,
            "rolling means vs naive recomputation, worst |diff| = " + fmt(worst_roll));

  // Ramp with fraction i/99 on day i: slope exactly 1/99, intercept 0.
  std::vector<corpus::Post> ramp;
  std::vector<double> ramp_verdicts;
  for (int dy = 0; dy < 100; ++dy) {
    for (int i = 0; i < 99; ++i) {
      ramp.push_back(basic_post("r" + std::to_string(ramp.size()),
                                (18600 + static_cast<std::int64_t>(dy)) * 86400 + i));
      ramp_verdicts.push_back(i < dy ? 1.0 : 0.0);
    }
  }
  analysis::TemporalSeries ramp_series = analysis::temporal_trend(ramp, ramp_verdicts, 0.5);
  c.near(ramp_series.ols_slope, 1.0 / 99.0, 1e-9, "OLS slope of a linear ramp");
  c.near(ramp_series.ols_intercept, 0.0, 1e-9, "OLS intercept of a linear ramp");

  // Boxplot statistics equal the sort-plus-interpolation oracle bitwise.
  rng::Engine beng(5);
  std::vector<corpus::Post> box_posts;
  std::vector<double> box_verdicts;
  std::vector<double> log_likes;
  for (int i = 0; i < 37; ++i) {
    corpus::Post post = basic_post("b" + std::to_string(i), 18500 * 86400 + i);
    post.likes = static_cast<long long>(rng::bounded(beng, 5000));
    post.comments = static_cast<long long>(rng::bounded(beng, 900));
    post.collections = static_cast<long long>(rng::bounded(beng, 300));
    log_likes.push_back(oracle_log1p10(post.likes));
    box_posts.push_back(std::move(post));
    box_verdicts.push_back(0.0);
  }
  analysis::EngagementSummary summary = analysis::engagement_compare(box_posts, box_verdicts, 0.5);
  c.require(summary.groups.size() == 1 && summary.groups[0].group == "human" &&
                summary.groups[0].count == 37,
            "one human engagement group with every post");
  if (summary.groups.size() == 1) {
    std::sort(log_likes.begin(), log_likes.end());
    double q1 = oracle_quantile(log_likes, 0.25);
    double q3 = oracle_quantile(log_likes, 0.75);
    double iqr = q3 - q1;
    const analysis::BoxStats& box = summary.groups[0].likes;
    c.require(box.q1 == q1 && box.median == oracle_quantile(log_likes, 0.5) && box.q3 == q3,
              "log-likes quartiles equal the interpolation oracle");
    c.require(box.whisker_low == std::max(log_likes.front(), q1 - 1.5 * iqr) &&
                  box.whisker_high == std::min(log_likes.back(), q3 + 1.5 * iqr),
              "whiskers are the 1.5*IQR fences clamped to the observed range");
  }

  // Tier boundaries: < 4 posts excluded; ratios 0.2 and 0.8 land inclusive.
  std::vector<corpus::Post> tier_posts;
  std::vector<double> tier_verdicts;
  auto add_author = [&](const std::string& author, int n, int ai) {
    for (int i = 0; i < n; ++i) {
      corpus::Post post =
          basic_post(author + std::to_string(i), 18400 * 86400 + static_cast<std::int64_t>(i));
      post.author_id = author;
      tier_posts.push_back(std::move(post));
      tier_verdicts.push_back(i < ai ? 1.0 : 0.0);
    }
  };
  add_author("alice", 4, 1);   // 0.25 -> Augmented
  add_author("bob", 5, 1);     // 0.20 -> Traditional (boundary)
  add_author("carol", 5, 4);   // 0.80 -> Reliant (boundary)
  add_author("dave", 3, 3);    // below the 4-post floor
  analysis::AuthorTierReport tiers = analysis::author_tiers(tier_posts, tier_verdicts, 0.2, 0.8, 0.5);
  std::map<std::string, analysis::Tier> got;
  for (const analysis::AuthorStat& a : tiers.authors) got[a.author_id] = a.tier;
  c.require(tiers.authors.size() == 3 && !got.count("dave"),
            "authors under four posts stay out of the tier report");
  c.require(got.count("alice") && got["alice"] == analysis::Tier::Augmented,
            "ratio 0.25 lands in Augmented");
  c.require(got.count("bob") && got["bob"] == analysis::Tier::Traditional,
            "ratio at the low boundary lands in Traditional");
  c.require(got.count("carol") && got["carol"] == analysis::Tier::Reliant,
            "ratio at the high boundary lands in Reliant");
}

// ---------------------------------------------------------------------------
// Criterion 8: rerunning the pipeline from an identical configuration yields
// byte-identical reports, matrices, models, and manifests.
// ---------------------------------------------------------------------------

void criterion_reproducibility(Check& c) {
  auto run_pipeline = [&](const fs::path& dir) {
    Chdir cd(dir);
    cli_ok(c, {"synth", "--count", "60", "--seed", "8"});
    cli_ok(c, {"extract", "--corpus", "reports/corpus.jsonl", "--seed", "8"});
    cli_ok(c, {"train", "--rounds", "30", "--max-depth", "4", "--seed", "8"});
    cli_ok(c, {"evaluate", "--seed", "8"});
    cli_ok(c, {"analyze", "correlation", "--seed", "8"});
  };
  fs::path a = fresh_dir("c8-a");
  fs::path b = fresh_dir("c8-b");
  run_pipeline(a);
  run_pipeline(b);
  if (!c.failures.empty()) return;

  const char* files[] = {
      "reports/corpus.jsonl",
      "reports/matrix.csv",
      "reports/matrix.csv.ids",
      "reports/train.json",
      "reports/evaluate.json",
      "reports/evaluate-confusion.csv",
      "reports/analyze-correlation.json",
      "reports/analyze-correlation.csv",
      "reports/analyze-correlation.svg",
      "reports/synth-manifest.json",
      "reports/extract-manifest.json",
      "reports/train-manifest.json",
      "reports/evaluate-manifest.json",
      "reports/analyze-correlation-manifest.json",
      "models/model.json",
  };
  for (const char* f : files) {
    std::string left = slurp(a / f);
    c.require(!left.empty(), std::string(f) + " is non-empty");
    c.require(left == slurp(b / f), std::string(f) + " is byte-identical across reruns");
  }

  json ma = slurp_json(a / "reports/extract-manifest.json");
  json mb = slurp_json(b / "reports/extract-manifest.json");
  c.require(ma["config_hash"] == mb["config_hash"] && !ma["config_hash"].get<std::string>().empty(),
            "manifests agree on the configuration hash");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    void (*fn)(Check&);
  };
  const Criterion criteria[] = {
      {"statistical feature oracles", 60.0, criterion_textstats},
      {"feature registry and ablation arithmetic", 30.0, criterion_registry},
      {"boosting quality on separable synthetics", 120.0, criterion_gbdt},
      {"attributions match the factorial oracle", 300.0, criterion_shap},
      {"end-to-end synthetic detection pipeline", 300.0, criterion_pipeline},
      {"zero-shot provider generalization", 300.0, criterion_zeroshot},
      {"analysis oracles", 120.0, criterion_analysis},
      {"byte-identical reruns from one manifest", 120.0, criterion_reproducibility},
  };

  int passed = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.fn(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("unhandled exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds)
      check.failures.push_back("exceeded the " + fmt(criterion.budget_seconds) +
                               "s wall-time budget");
    bool ok = check.failures.empty();
    std::printf("criterion %d: %-42s %s  %7.2fs (budget %.0fs)\n", index, criterion.name,
                ok ? "PASS" : "FAIL", seconds, criterion.budget_seconds);
    for (const std::string& failure : check.failures)
      std::printf("  - %s\n", failure.c_str());
    if (ok) ++passed;
  }
  std::printf("acceptance: %d/8 criteria passed\n", passed);
  return passed == 8 ? 0 : 1;
}
