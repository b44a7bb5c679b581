#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "plad/error.hpp"
#include "plad/features.hpp"
#include "plad/gbdt.hpp"
#include "plad/rng.hpp"

using namespace plad;
using namespace plad::gbdt;

namespace {

constexpr std::size_t kWidth = 31;

features::FeatureMatrix make_matrix(std::vector<std::vector<double>> rows,
                                    std::vector<std::string> labels) {
  features::FeatureMatrix m;
  m.registry_version = features::kRegistryVersion;
  m.labels = std::move(labels);
  for (std::size_t i = 0; i < rows.size(); ++i)
    m.rows.push_back({"r" + std::to_string(i), std::move(rows[i])});
  return m;
}

/// Gaussian blob per class: unit noise everywhere, the class center added on
/// its informative dimensions.
features::FeatureMatrix blobs(const std::vector<std::vector<std::size_t>>& informative,
                              const std::vector<std::string>& names, std::size_t per_class,
                              double shift, std::uint64_t seed) {
  rng::Engine eng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < names.size(); ++k) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> x(kWidth);
      for (std::size_t c = 0; c < kWidth; ++c) x[c] = rng::normal(eng);
      for (std::size_t c : informative[k]) x[c] += shift;
      rows.push_back(std::move(x));
      labels.push_back(names[k]);
    }
  }
  return make_matrix(std::move(rows), std::move(labels));
}

struct Split {
  features::FeatureMatrix train;
  features::FeatureMatrix test;
};

Split holdout(const features::FeatureMatrix& m, double test_fraction, std::uint64_t seed) {
  std::vector<std::size_t> idx(m.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  rng::Engine eng(rng::derive_seed(seed, "holdout"));
  rng::shuffle(idx, eng);
  auto n_test = static_cast<std::size_t>(static_cast<double>(idx.size()) * test_fraction);
  Split s;
  s.train.registry_version = s.test.registry_version = m.registry_version;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto& part = i < n_test ? s.test : s.train;
    part.rows.push_back(m.rows[idx[i]]);
    part.labels.push_back(m.labels[idx[i]]);
  }
  return s;
}

/// Nearest-centroid oracle: fit class means on train, classify test by
/// Euclidean distance. Keeps the blob fixtures honest.
double centroid_accuracy(const Split& s) {
  std::vector<std::string> classes = s.train.labels;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<std::vector<double>> centroid(classes.size(), std::vector<double>(kWidth, 0.0));
  std::vector<std::size_t> count(classes.size(), 0);
  auto index_of = [&classes](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
  };
  for (std::size_t r = 0; r < s.train.rows.size(); ++r) {
    std::size_t k = index_of(s.train.labels[r]);
    ++count[k];
    for (std::size_t c = 0; c < kWidth; ++c) centroid[k][c] += s.train.rows[r].values[c];
  }
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (std::size_t c = 0; c < kWidth; ++c) centroid[k][c] /= static_cast<double>(count[k]);

  std::size_t correct = 0;
  for (std::size_t r = 0; r < s.test.rows.size(); ++r) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < classes.size(); ++k) {
      double d = 0.0;
      for (std::size_t c = 0; c < kWidth; ++c) {
        double diff = s.test.rows[r].values[c] - centroid[k][c];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (classes[best] == s.test.labels[r]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(s.test.rows.size());
}

Ensemble trivial_classifier(std::vector<std::string> labels, std::vector<double> base) {
  Ensemble e;
  e.task = labels.size() == 2 ? Task::Binary : Task::Multiclass;
  e.class_labels = std::move(labels);
  e.base_score = std::move(base);
  e.registry_version = features::kRegistryVersion;
  e.n_features = kWidth;
  return e;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("two gaussian blobs: holdout accuracy beats the 0.98 bar") {
  auto m = blobs({{0, 3, 7, 11, 19}, {0, 3, 7, 11, 19}}, {"blue", "red"}, 500, 0.0, 101);
  // shift the red class only: +2 on the informative dims, -2 for blue
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    double sign = m.labels[r] == "red" ? 2.0 : -2.0;
    for (std::size_t c : {0, 3, 7, 11, 19}) m.rows[r].values[c] += sign;
  }
  Split s = holdout(m, 0.2, 7);
  CHECK(centroid_accuracy(s) >= 0.97);

  TrainConfig config;
  config.rounds = 120;
  config.max_depth = 5;
  config.seed = 42;
  TrainReport report;
  Ensemble model = train(s.train, config, &report);
  CHECK(model.task == Task::Binary);
  CHECK(model.class_labels == std::vector<std::string>{"blue", "red"});
  CHECK(model.trees.size() == 120);

  EvalReport eval = evaluate(model, s.test);
  CHECK(eval.accuracy >= 98.0);

  // separable data at lr 0.1: per-round training loss never climbs
  REQUIRE(report.loss_trace.size() == 120);
  for (std::size_t i = 1; i < report.loss_trace.size(); ++i)
    CHECK(report.loss_trace[i] <= report.loss_trace[i - 1] + 1e-9);

  // a point far on the red side is called red with conviction
  std::vector<double> far(kWidth, 0.0);
  for (std::size_t c : {0, 3, 7, 11, 19}) far[c] = 6.0;
  std::vector<double> p = predict_proba(model, far);
  CHECK(p[1] > 0.9);
  CHECK(predict(model, far) == "red");
}

TEST_CASE("six classes with disjoint informative dims: macro F1 over 0.90") {
  std::vector<std::vector<std::size_t>> informative;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < 6; ++k) {
    informative.push_back({5 * k, 5 * k + 1, 5 * k + 2, 5 * k + 3, 5 * k + 4});
    names.push_back("class" + std::to_string(k));
  }
  auto m = blobs(informative, names, 150, 2.0, 202);
  Split s = holdout(m, 0.2, 11);
  CHECK(centroid_accuracy(s) >= 0.97);

  TrainConfig config;
  config.rounds = 60;
  config.max_depth = 4;
  config.seed = 1;
  Ensemble model = train(s.train, config);
  CHECK(model.task == Task::Multiclass);
  CHECK(model.trees.size() == 60 * 6);
  CHECK(model.base_score.size() == 6);

  EvalReport eval = evaluate(model, s.test);
  CHECK(eval.macro_f1 >= 90.0);

  // confusion row sums equal class supports
  std::map<std::string, long long> support;
  for (const std::string& label : s.test.labels) ++support[label];
  for (std::size_t k = 0; k < eval.class_labels.size(); ++k) {
    long long row_sum = 0;
    for (long long v : eval.confusion[k]) row_sum += v;
    CHECK(row_sum == support[eval.class_labels[k]]);
  }
}

TEST_CASE("training preconditions") {
  auto m = blobs({{0}, {1}}, {"a", "b"}, 10, 2.0, 3);

  auto single = m;
  for (auto& label : single.labels) label = "a";
  CHECK_THROWS_AS(train(single), InvalidArgument);

  auto broken = m;
  broken.rows[4].values[18] = std::numeric_limits<double>::quiet_NaN();
  try {
    train(broken);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    std::string msg = e.what();
    CHECK(msg.find("r4") != std::string::npos);
    CHECK(msg.find("type_token_ratio") != std::string::npos);  // registry column 18
  }

  TrainConfig bad;
  bad.rounds = 0;
  CHECK_THROWS_AS(train(m, bad), InvalidArgument);
  bad = {};
  bad.learning_rate = 1.5;
  CHECK_THROWS_AS(train(m, bad), InvalidArgument);
  bad = {};
  bad.subsample = 0.0;
  CHECK_THROWS_AS(train(m, bad), InvalidArgument);

  features::FeatureMatrix empty;
  empty.registry_version = features::kRegistryVersion;
  CHECK_THROWS_AS(train(empty), InvalidArgument);
}

TEST_CASE("zero-tree ensembles: uniform probabilities and pinned tie-break") {
  Ensemble balanced = trivial_classifier({"a", "b"}, {0.0});
  std::vector<double> x(kWidth, 0.3);
  std::vector<double> p = predict_proba(balanced, x);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(predict(balanced, x) == "a");  // tie goes to the lowest class index

  double third = std::log(1.0 / 3.0);
  Ensemble three = trivial_classifier({"alpha", "beta", "gamma"}, {third, third, third});
  p = predict_proba(three, x);
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
  CHECK(predict(three, x) == "alpha");
}

TEST_CASE("probability simplex holds on fuzzed inputs") {
  auto m = blobs({{0, 1}, {2, 3}, {4, 5}}, {"a", "b", "c"}, 60, 2.0, 77);
  TrainConfig config;
  config.rounds = 25;
  config.max_depth = 3;
  Ensemble model = train(m, config);

  rng::Engine eng(404);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x(kWidth);
    for (double& v : x) v = rng::normal(eng) * 3.0;
    std::vector<double> p = predict_proba(model, x);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    // argmax consistency
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
      if (p[k] > p[best]) best = k;
    CHECK(predict(model, x) == model.class_labels[best]);
  }

  CHECK_THROWS_AS(margins(model, std::vector<double>(7, 0.0)), InvalidArgument);
}

TEST_CASE("evaluate: perfect predictor and the all-A worked example") {
  // one decisive split on feature 0
  Ensemble sharp = trivial_classifier({"A", "B"}, {0.0});
  Tree tree;
  tree.nodes.resize(3);
  tree.nodes[0] = {0, 0.0, 1, 2, 0.0, 5.0, 100.0};
  tree.nodes[1] = {-1, 0.0, -1, -1, -10.0, 0.0, 50.0};
  tree.nodes[2] = {-1, 0.0, -1, -1, 10.0, 0.0, 50.0};
  sharp.trees.push_back(tree);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> a(kWidth, 0.0), b(kWidth, 0.0);
    a[0] = -1.0;
    b[0] = 1.0;
    rows.push_back(a);
    labels.push_back("A");
    rows.push_back(b);
    labels.push_back("B");
  }
  auto m = make_matrix(rows, labels);
  EvalReport perfect = evaluate(sharp, m);
  CHECK(perfect.accuracy == doctest::Approx(100.0));
  CHECK(perfect.macro_precision == doctest::Approx(100.0));
  CHECK(perfect.macro_recall == doctest::Approx(100.0));
  CHECK(perfect.macro_f1 == doctest::Approx(100.0));

  // degenerate predictor: always class A; undefined precision for B counts 0
  Ensemble stuck = trivial_classifier({"A", "B"}, {-100.0});
  EvalReport eval = evaluate(stuck, m);
  CHECK(eval.accuracy == doctest::Approx(50.0));
  CHECK(eval.macro_recall == doctest::Approx(50.0));
  CHECK(eval.macro_precision == doctest::Approx(25.0));
  CHECK(eval.macro_f1 == doctest::Approx(100.0 / 3.0));
  CHECK(eval.confusion[0][0] == 50);
  CHECK(eval.confusion[1][0] == 50);
  CHECK(eval.confusion[0][1] == 0);

  auto stranger = m;
  stranger.labels[3] = "C";
  CHECK_THROWS_AS(evaluate(stuck, stranger), InvalidArgument);

  auto other_version = m;
  other_version.registry_version = std::string(features::kRegistryVersion) + "-woLexical";
  for (auto& row : other_version.rows) row.values.resize(22);
  CHECK_THROWS_AS(evaluate(stuck, other_version), VersionMismatch);

  CHECK_THROWS_AS(evaluate(trivial_classifier({"A", "B"}, {0.0}),
                           features::FeatureMatrix{}),
                  VersionMismatch);
}

TEST_CASE("feature importance concentrates on the informative dimension") {
  rng::Engine eng(55);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (int i = 0; i < 400; ++i) {
    std::vector<double> x(kWidth);
    for (double& v : x) v = rng::normal(eng);
    labels.push_back(x[3] > 0.0 ? "pos" : "neg");
    rows.push_back(std::move(x));
  }
  auto m = make_matrix(std::move(rows), std::move(labels));
  TrainConfig config;
  config.rounds = 40;
  config.max_depth = 3;
  Ensemble model = train(m, config);

  std::vector<double> importance = feature_importance(model);
  REQUIRE(importance.size() == kWidth);
  double total = 0.0;
  for (double v : importance) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(100.0));
  CHECK(importance[3] > 50.0);

  // a feature no tree split on scores exactly zero
  std::vector<char> used(kWidth, 0);
  for (const Tree& tree : model.trees)
    for (const Node& node : tree.nodes)
      if (!node.is_leaf()) used[node.feature] = 1;
  for (std::size_t c = 0; c < kWidth; ++c)
    if (!used[c]) CHECK(importance[c] == 0.0);
}

TEST_CASE("model JSON survives a round trip bit for bit") {
  auto m = blobs({{0, 1}, {2, 3}, {4, 5}}, {"a", "b", "c"}, 50, 2.0, 31);
  TrainConfig config;
  config.rounds = 15;
  config.max_depth = 3;
  Ensemble model = train(m, config);

  auto path = temp_path("plad_test_model.json");
  save_ensemble(model, path.string());
  Ensemble back = load_ensemble(path.string());
  CHECK(back.class_labels == model.class_labels);
  CHECK(back.base_score == model.base_score);
  CHECK(back.registry_version == model.registry_version);

  rng::Engine eng(9001);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(kWidth);
    for (double& v : x) v = rng::normal(eng) * 2.0;
    CHECK(margins(model, x) == margins(back, x));
  }

  // truncated file: parse error, no partial model
  std::string text = ensemble_to_json(model);
  std::ofstream(path) << text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(load_ensemble(path.string()), SchemaError);

  // foreign registry version: refused up front
  std::string foreign = text;
  auto pos = foreign.find("plad-features-v1");
  REQUIRE(pos != std::string::npos);
  foreign.replace(pos, 16, "plad-features-v2");
  std::ofstream(path) << foreign;
  CHECK_THROWS_AS(load_ensemble(path.string()), VersionMismatch);

  // unknown model format version
  std::string wrong = text;
  pos = wrong.find("plad-gbdt-v1");
  REQUIRE(pos != std::string::npos);
  wrong.replace(pos, 12, "plad-gbdt-v9");
  std::ofstream(path) << wrong;
  CHECK_THROWS_AS(load_ensemble(path.string()), VersionMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("training is deterministic; threads and reruns change nothing") {
  auto m = blobs({{0, 2}, {1, 3}}, {"a", "b"}, 80, 2.0, 88);
  TrainConfig config;
  config.rounds = 20;
  config.max_depth = 4;
  config.seed = 5;

  std::string first = ensemble_to_json(train(m, config));
  std::string second = ensemble_to_json(train(m, config));
  CHECK(first == second);

  TrainConfig threaded = config;
  threaded.n_threads = 4;
  CHECK(ensemble_to_json(train(m, threaded)) == first);

  TrainConfig sub = config;
  sub.subsample = 0.7;
  std::string sub_a = ensemble_to_json(train(m, sub));
  std::string sub_b = ensemble_to_json(train(m, sub));
  CHECK(sub_a == sub_b);
  CHECK(sub_a != first);

  TrainConfig other_seed = sub;
  other_seed.seed = 6;
  CHECK(ensemble_to_json(train(m, other_seed)) != sub_a);
}

TEST_CASE("strictly monotone feature transforms leave label assignments alone") {
  auto m = blobs({{0, 3, 7}, {1, 4, 9}}, {"a", "b"}, 120, 2.0, 66);
  TrainConfig config;
  config.rounds = 30;
  config.max_depth = 4;
  config.seed = 2;
  Ensemble model = train(m, config);

  auto warped = m;
  for (auto& row : warped.rows)
    for (double& v : row.values) v = v * v * v;  // x^3 is strictly monotone
  Ensemble warped_model = train(warped, config);

  for (std::size_t r = 0; r < m.rows.size(); ++r)
    CHECK(predict(model, m.rows[r].values) ==
          predict(warped_model, warped.rows[r].values));
}

TEST_CASE("tree structure invariants: child links, covers, leaf sizes") {
  auto m = blobs({{0, 1}, {2, 3}}, {"a", "b"}, 100, 2.0, 13);
  TrainConfig config;
  config.rounds = 15;
  config.max_depth = 5;
  Ensemble model = train(m, config);

  for (const Tree& tree : model.trees) {
    REQUIRE(!tree.nodes.empty());
    for (const Node& node : tree.nodes) {
      CHECK(node.cover > 0.0);
      if (node.is_leaf()) {
        CHECK(node.cover >= config.min_samples_leaf);
      } else {
        REQUIRE(node.left > 0);
        REQUIRE(node.right > 0);
        REQUIRE(node.left < static_cast<int>(tree.nodes.size()));
        REQUIRE(node.right < static_cast<int>(tree.nodes.size()));
        // children partition the parent's cover
        CHECK(tree.nodes[node.left].cover + tree.nodes[node.right].cover ==
              doctest::Approx(node.cover));
      }
    }
  }
}

TEST_CASE("regression: linear target recovered with R^2 at least 0.95") {
  rng::Engine eng(314);
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (int i = 0; i < 600; ++i) {
    std::vector<double> x(kWidth);
    for (double& v : x) v = rng::normal(eng);
    targets.push_back(3.0 * x[0] + rng::normal(eng) * 0.01);
    rows.push_back(std::move(x));
  }
  std::vector<std::string> labels(rows.size(), "row");
  auto m = make_matrix(rows, labels);

  // 20% holdout from the tail; rows are i.i.d. so order is immaterial
  features::FeatureMatrix train_m, test_m;
  train_m.registry_version = test_m.registry_version = m.registry_version;
  std::vector<double> train_y, test_y;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (r < 480) {
      train_m.rows.push_back(m.rows[r]);
      train_m.labels.push_back("row");
      train_y.push_back(targets[r]);
    } else {
      test_m.rows.push_back(m.rows[r]);
      test_m.labels.push_back("row");
      test_y.push_back(targets[r]);
    }
  }

  TrainConfig config;
  config.rounds = 150;
  config.max_depth = 4;
  TrainReport report;
  Ensemble model = train_regressor(train_m, train_y, config, &report);
  CHECK(model.task == Task::Regression);

  double mean = 0.0;
  for (double y : test_y) mean += y;
  mean /= static_cast<double>(test_y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t r = 0; r < test_m.rows.size(); ++r) {
    double pred = predict_value(model, test_m.rows[r].values);
    ss_res += (pred - test_y[r]) * (pred - test_y[r]);
    ss_tot += (test_y[r] - mean) * (test_y[r] - mean);
  }
  CHECK(1.0 - ss_res / ss_tot >= 0.95);

  for (std::size_t i = 1; i < report.loss_trace.size(); ++i)
    CHECK(report.loss_trace[i] <= report.loss_trace[i - 1] + 1e-9);

  // importance goes to the only feature that matters
  CHECK(feature_importance(model)[0] > 50.0);

  CHECK_THROWS_AS(predict_value(trivial_classifier({"a", "b"}, {0.0}),
                                std::vector<double>(kWidth, 0.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(predict_proba(model, std::vector<double>(kWidth, 0.0)), InvalidArgument);
}

TEST_CASE("regression on a constant target collapses to single leaves") {
  rng::Engine eng(271);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 60; ++i) {
    std::vector<double> x(kWidth);
    for (double& v : x) v = rng::normal(eng);
    rows.push_back(std::move(x));
  }
  std::vector<double> targets(rows.size(), 4.25);
  auto m = make_matrix(rows, std::vector<std::string>(rows.size(), "row"));

  TrainConfig config;
  config.rounds = 10;
  Ensemble model = train_regressor(m, targets, config);
  for (const Tree& tree : model.trees) CHECK(tree.nodes.size() == 1);
  for (const auto& row : m.rows)
    CHECK(std::abs(predict_value(model, row.values) - 4.25) <= 1e-9);

  std::vector<double> bad = targets;
  bad[5] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(train_regressor(m, bad, config), InvalidArgument);
}
