#include "plad/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "plad/error.hpp"
#include "plad/parallel.hpp"
#include "plad/rng.hpp"

namespace plad::gbdt {

using json = nlohmann::json;

namespace {

constexpr double kEps = 1e-8;        // hessian floor
constexpr double kProbClamp = 1e-15;  // keeps log() finite in the loss trace

struct NodeStat {
  double g = 0.0;
  double h = 0.0;
  long long n = 0;
};

struct Candidate {
  double gain = -1.0;  // no candidate yet
  int feature = -1;
  double threshold = 0.0;
  double g_left = 0.0;
  double h_left = 0.0;
  long long n_left = 0;
};

double split_score(double g, double h) { return g * g / (h + kEps); }

/// Column-major copy of the matrix plus per-feature row orderings sorted by
/// (value, row index); the tie on row index pins the scan order.
struct Dataset {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::vector<double>> columns;
  std::vector<std::vector<int>> order;

  explicit Dataset(const features::FeatureMatrix& matrix) {
    n_rows = matrix.rows.size();
    n_cols = matrix.width();
    columns.assign(n_cols, std::vector<double>(n_rows));
    for (std::size_t r = 0; r < n_rows; ++r)
      for (std::size_t c = 0; c < n_cols; ++c) columns[c][r] = matrix.rows[r].values[c];
    order.assign(n_cols, {});
    for (std::size_t c = 0; c < n_cols; ++c) {
      std::vector<int>& idx = order[c];
      idx.resize(n_rows);
      for (std::size_t r = 0; r < n_rows; ++r) idx[r] = static_cast<int>(r);
      const std::vector<double>& col = columns[c];
      std::sort(idx.begin(), idx.end(), [&col](int a, int b) {
        if (col[a] != col[b]) return col[a] < col[b];
        return a < b;
      });
    }
  }
};

void check_finite(const features::FeatureMatrix& matrix) {
  features::Registry reg = features::registry_for_version(matrix.registry_version);
  if (reg.size() != matrix.width())
    throw SchemaError("matrix width " + std::to_string(matrix.width()) +
                      " does not match registry \"" + matrix.registry_version + "\"");
  for (const features::FeatureVector& row : matrix.rows) {
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      if (!std::isfinite(row.values[c]))
        throw InvalidArgument("row \"" + row.post_id + "\" column \"" +
                              reg.entries[c].id + "\" is not finite");
    }
  }
}

void check_config(const TrainConfig& config) {
  if (config.rounds < 1) throw InvalidArgument("rounds must be >= 1");
  if (config.max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
  if (!(config.learning_rate > 0.0) || config.learning_rate > 1.0)
    throw InvalidArgument("learning_rate must be in (0, 1]");
  if (config.min_samples_leaf < 1) throw InvalidArgument("min_samples_leaf must be >= 1");
  if (!(config.subsample > 0.0) || config.subsample > 1.0)
    throw InvalidArgument("subsample must be in (0, 1]");
}

/// Fits one tree to (grad, hess) over the rows flagged in_round. Level-wise
/// exact greedy; the per-feature scans are independent, so running them in
/// parallel and merging in feature order gives the serial result bit for bit.
Tree build_tree(const Dataset& data, const std::vector<double>& grad,
                const std::vector<double>& hess, const std::vector<char>& in_round,
                const TrainConfig& config) {
  Tree tree;
  std::vector<NodeStat> stats;

  NodeStat root;
  for (std::size_t r = 0; r < data.n_rows; ++r) {
    if (!in_round[r]) continue;
    root.g += grad[r];
    root.h += hess[r];
    ++root.n;
  }
  tree.nodes.push_back({});
  tree.nodes[0].cover = static_cast<double>(root.n);
  stats.push_back(root);

  std::vector<int> position(data.n_rows, -1);
  for (std::size_t r = 0; r < data.n_rows; ++r)
    if (in_round[r]) position[r] = 0;

  std::vector<int> level = {0};
  for (int depth = 0; depth < config.max_depth && !level.empty(); ++depth) {
    // slot: node id -> dense index within this level, -1 when not splittable
    std::vector<int> slot(tree.nodes.size(), -1);
    std::vector<int> active;
    for (int node : level) {
      if (stats[node].n >= 2LL * config.min_samples_leaf) {
        slot[node] = static_cast<int>(active.size());
        active.push_back(node);
      }
    }
    if (active.empty()) break;

    std::vector<Candidate> per_feature(data.n_cols * active.size());
    parallel::for_range(data.n_cols, config.n_threads, [&](std::size_t f) {
      Candidate* best = &per_feature[f * active.size()];
      struct Scan {
        double prev = 0.0;
        double g_left = 0.0;
        double h_left = 0.0;
        long long n_left = 0;
        bool seen = false;
      };
      std::vector<Scan> scan(active.size());
      const std::vector<double>& col = data.columns[f];
      for (int r : data.order[f]) {
        int node = position[r];
        if (node < 0 || slot[node] < 0) continue;
        int j = slot[node];
        Scan& s = scan[j];
        double v = col[r];
        if (s.seen && v > s.prev && s.n_left >= config.min_samples_leaf &&
            stats[node].n - s.n_left >= config.min_samples_leaf) {
          double mid = s.prev + (v - s.prev) * 0.5;
          if (mid > s.prev) {  // adjacent doubles can round the midpoint away
            const NodeStat& p = stats[node];
            double gain = 0.5 * (split_score(s.g_left, s.h_left) +
                                 split_score(p.g - s.g_left, p.h - s.h_left) -
                                 split_score(p.g, p.h));
            if (gain > best[j].gain) {
              best[j] = {gain, static_cast<int>(f), mid, s.g_left, s.h_left, s.n_left};
            }
          }
        }
        s.g_left += grad[r];
        s.h_left += hess[r];
        ++s.n_left;
        s.prev = v;
        s.seen = true;
      }
    });

    // merge in ascending feature order; strict > keeps the lowest feature
    // index and, within a feature, the lowest threshold on gain ties
    std::vector<Candidate> best(active.size());
    for (std::size_t f = 0; f < data.n_cols; ++f) {
      for (std::size_t j = 0; j < active.size(); ++j) {
        const Candidate& c = per_feature[f * active.size() + j];
        if (c.gain > best[j].gain) best[j] = c;
      }
    }

    std::vector<int> next_level;
    std::vector<char> split_here(tree.nodes.size(), 0);
    for (std::size_t j = 0; j < active.size(); ++j) {
      const Candidate& c = best[j];
      if (c.feature < 0 || !(c.gain > 0.0) || !(c.gain > config.min_gain)) continue;
      int node = active[j];
      // copy, not a reference: the push_backs below can reallocate stats
      const NodeStat p = stats[node];

      int left = static_cast<int>(tree.nodes.size());
      int right = left + 1;
      tree.nodes.push_back({});
      tree.nodes.push_back({});
      tree.nodes[left].cover = static_cast<double>(c.n_left);
      tree.nodes[right].cover = static_cast<double>(p.n - c.n_left);
      stats.push_back({c.g_left, c.h_left, c.n_left});
      stats.push_back({p.g - c.g_left, p.h - c.h_left, p.n - c.n_left});

      Node& parent = tree.nodes[node];
      parent.feature = c.feature;
      parent.threshold = c.threshold;
      parent.left = left;
      parent.right = right;
      parent.gain = c.gain;

      split_here.resize(tree.nodes.size(), 0);
      split_here[node] = 1;
      next_level.push_back(left);
      next_level.push_back(right);
    }
    if (next_level.empty()) break;

    for (std::size_t r = 0; r < data.n_rows; ++r) {
      int node = position[r];
      if (node < 0 || !split_here[node]) continue;
      const Node& parent = tree.nodes[node];
      position[r] = data.columns[parent.feature][r] < parent.threshold ? parent.left
                                                                       : parent.right;
    }
    level = std::move(next_level);
  }

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].is_leaf())
      tree.nodes[i].value = -config.learning_rate * stats[i].g / (stats[i].h + kEps);
  }
  return tree;
}

double tree_value(const Tree& tree, const std::vector<double>& x) {
  int node = 0;
  while (!tree.nodes[node].is_leaf()) {
    const Node& n = tree.nodes[node];
    node = x[n.feature] < n.threshold ? n.left : n.right;
  }
  return tree.nodes[node].value;
}

std::vector<char> pick_rows(std::size_t n_rows, const TrainConfig& config, int round) {
  std::vector<char> in_round(n_rows, 1);
  if (config.subsample >= 1.0) return in_round;
  auto m = static_cast<std::size_t>(static_cast<double>(n_rows) * config.subsample);
  if (m < 1) m = 1;
  std::vector<std::size_t> idx(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) idx[i] = i;
  rng::Engine eng(rng::derive_seed(config.seed, "subsample:" + std::to_string(round)));
  rng::shuffle(idx, eng);
  std::fill(in_round.begin(), in_round.end(), 0);
  for (std::size_t i = 0; i < m; ++i) in_round[idx[i]] = 1;
  return in_round;
}

void softmax_inplace(std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double clamp_prob(double p) {
  return std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
}

}  // namespace

std::string task_name(Task task) {
  switch (task) {
    case Task::Binary: return "binary";
    case Task::Multiclass: return "multiclass";
    case Task::Regression: return "regression";
  }
  return "binary";
}

Ensemble train(const features::FeatureMatrix& matrix, const TrainConfig& config,
               TrainReport* report) {
  check_config(config);
  if (matrix.rows.empty()) throw InvalidArgument("cannot train on an empty matrix");
  if (matrix.labels.size() != matrix.rows.size())
    throw InvalidArgument("labels do not align with rows");
  check_finite(matrix);

  std::vector<std::string> classes = matrix.labels;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2)
    throw InvalidArgument("training needs at least two classes, got " +
                          std::to_string(classes.size()));

  std::size_t n = matrix.rows.size();
  std::size_t k_classes = classes.size();
  bool binary = k_classes == 2;
  std::size_t outputs = binary ? 1 : k_classes;

  std::map<std::string, int> class_index;
  for (std::size_t k = 0; k < k_classes; ++k) class_index[classes[k]] = static_cast<int>(k);
  std::vector<int> y(n);
  std::vector<long long> support(k_classes, 0);
  for (std::size_t r = 0; r < n; ++r) {
    y[r] = class_index[matrix.labels[r]];
    ++support[y[r]];
  }

  Ensemble model;
  model.task = binary ? Task::Binary : Task::Multiclass;
  model.class_labels = classes;
  model.learning_rate = config.learning_rate;
  model.registry_version = matrix.registry_version;
  model.n_features = matrix.width();
  if (binary) {
    model.base_score = {std::log(static_cast<double>(support[1]) /
                                 static_cast<double>(support[0]))};
  } else {
    model.base_score.resize(k_classes);
    for (std::size_t k = 0; k < k_classes; ++k)
      model.base_score[k] =
          std::log(static_cast<double>(support[k]) / static_cast<double>(n));
  }

  Dataset data(matrix);
  // margin[r * outputs + k]
  std::vector<double> margin(n * outputs);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < outputs; ++k) margin[r * outputs + k] = model.base_score[k];

  std::vector<double> grad(n), hess(n), prob(outputs);
  if (report) report->loss_trace.clear();
  for (int round = 0; round < config.rounds; ++round) {
    std::vector<char> in_round = pick_rows(n, config, round);
    for (std::size_t k = 0; k < outputs; ++k) {
      for (std::size_t r = 0; r < n; ++r) {
        double p;
        if (binary) {
          p = sigmoid(margin[r]);
        } else {
          for (std::size_t j = 0; j < outputs; ++j) prob[j] = margin[r * outputs + j];
          softmax_inplace(prob);
          p = prob[k];
        }
        double target = binary ? (y[r] == 1 ? 1.0 : 0.0) : (y[r] == static_cast<int>(k));
        grad[r] = p - target;
        hess[r] = p * (1.0 - p);
      }
      model.trees.push_back(build_tree(data, grad, hess, in_round, config));
      const Tree& tree = model.trees.back();
      for (std::size_t r = 0; r < n; ++r)
        margin[r * outputs + k] += tree_value(tree, matrix.rows[r].values);
    }
    if (report) {
      double loss = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        double p_true;
        if (binary) {
          double p = sigmoid(margin[r]);
          p_true = y[r] == 1 ? p : 1.0 - p;
        } else {
          for (std::size_t j = 0; j < outputs; ++j) prob[j] = margin[r * outputs + j];
          softmax_inplace(prob);
          p_true = prob[y[r]];
        }
        loss -= std::log(clamp_prob(p_true));
      }
      report->loss_trace.push_back(loss / static_cast<double>(n));
    }
  }
  return model;
}

Ensemble train_regressor(const features::FeatureMatrix& matrix,
                         const std::vector<double>& targets, const TrainConfig& config,
                         TrainReport* report) {
  check_config(config);
  if (matrix.rows.empty()) throw InvalidArgument("cannot train on an empty matrix");
  if (targets.size() != matrix.rows.size())
    throw InvalidArgument("targets do not align with rows");
  check_finite(matrix);
  for (double t : targets)
    if (!std::isfinite(t)) throw InvalidArgument("target is not finite");

  std::size_t n = matrix.rows.size();
  Ensemble model;
  model.task = Task::Regression;
  model.learning_rate = config.learning_rate;
  model.registry_version = matrix.registry_version;
  model.n_features = matrix.width();
  double mean = 0.0;
  for (double t : targets) mean += t;
  mean /= static_cast<double>(n);
  model.base_score = {mean};

  Dataset data(matrix);
  std::vector<double> margin(n, mean), grad(n), hess(n, 1.0);
  if (report) report->loss_trace.clear();
  for (int round = 0; round < config.rounds; ++round) {
    std::vector<char> in_round = pick_rows(n, config, round);
    for (std::size_t r = 0; r < n; ++r) grad[r] = margin[r] - targets[r];
    model.trees.push_back(build_tree(data, grad, hess, in_round, config));
    const Tree& tree = model.trees.back();
    for (std::size_t r = 0; r < n; ++r) margin[r] += tree_value(tree, matrix.rows[r].values);
    if (report) {
      double mse = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        double d = margin[r] - targets[r];
        mse += d * d;
      }
      report->loss_trace.push_back(mse / static_cast<double>(n));
    }
  }
  return model;
}

std::vector<double> margins(const Ensemble& ensemble, const std::vector<double>& x) {
  if (x.size() != ensemble.n_features)
    throw InvalidArgument("expected " + std::to_string(ensemble.n_features) +
                          " features, got " + std::to_string(x.size()));
  std::size_t outputs = ensemble.outputs();
  std::vector<double> out(ensemble.base_score);
  out.resize(outputs);
  for (std::size_t i = 0; i < ensemble.trees.size(); ++i)
    out[i % outputs] += tree_value(ensemble.trees[i], x);
  return out;
}

std::vector<double> predict_proba(const Ensemble& ensemble, const std::vector<double>& x) {
  if (ensemble.task == Task::Regression)
    throw InvalidArgument("predict_proba requires a classifier");
  std::vector<double> m = margins(ensemble, x);
  if (ensemble.task == Task::Binary) {
    double p = sigmoid(m[0]);
    return {1.0 - p, p};
  }
  softmax_inplace(m);
  return m;
}

std::string predict(const Ensemble& ensemble, const std::vector<double>& x) {
  std::vector<double> p = predict_proba(ensemble, x);
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k] > p[best]) best = k;
  return ensemble.class_labels[best];
}

double predict_value(const Ensemble& ensemble, const std::vector<double>& x) {
  if (ensemble.task != Task::Regression)
    throw InvalidArgument("predict_value requires a regressor");
  return margins(ensemble, x)[0];
}

EvalReport evaluate(const Ensemble& ensemble, const features::FeatureMatrix& matrix) {
  if (ensemble.task == Task::Regression)
    throw InvalidArgument("evaluate requires a classifier");
  if (matrix.registry_version != ensemble.registry_version)
    throw VersionMismatch("matrix registry \"" + matrix.registry_version +
                          "\" does not match model registry \"" +
                          ensemble.registry_version + "\"");
  if (matrix.labels.size() != matrix.rows.size())
    throw InvalidArgument("labels do not align with rows");

  std::map<std::string, int> class_index;
  for (std::size_t k = 0; k < ensemble.class_labels.size(); ++k)
    class_index[ensemble.class_labels[k]] = static_cast<int>(k);

  std::size_t k_classes = ensemble.class_labels.size();
  EvalReport report;
  report.class_labels = ensemble.class_labels;
  report.confusion.assign(k_classes, std::vector<long long>(k_classes, 0));

  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    auto it = class_index.find(matrix.labels[r]);
    if (it == class_index.end())
      throw InvalidArgument("label \"" + matrix.labels[r] + "\" is unknown to the model");
    std::string predicted = predict(ensemble, matrix.rows[r].values);
    report.confusion[it->second][class_index[predicted]] += 1;
  }

  long long total = 0, correct = 0;
  double precision_sum = 0.0, recall_sum = 0.0, f1_sum = 0.0;
  for (std::size_t k = 0; k < k_classes; ++k) {
    long long row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < k_classes; ++j) {
      row_sum += report.confusion[k][j];
      col_sum += report.confusion[j][k];
    }
    long long tp = report.confusion[k][k];
    total += row_sum;
    correct += tp;
    double precision = col_sum > 0 ? static_cast<double>(tp) / col_sum : 0.0;
    double recall = row_sum > 0 ? static_cast<double>(tp) / row_sum : 0.0;
    double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                         : 0.0;
    precision_sum += precision;
    recall_sum += recall;
    f1_sum += f1;
  }
  double kd = static_cast<double>(k_classes);
  report.accuracy = total > 0 ? 100.0 * static_cast<double>(correct) / total : 0.0;
  report.macro_precision = 100.0 * precision_sum / kd;
  report.macro_recall = 100.0 * recall_sum / kd;
  report.macro_f1 = 100.0 * f1_sum / kd;
  return report;
}

std::vector<double> feature_importance(const Ensemble& ensemble) {
  std::vector<double> gain(ensemble.n_features, 0.0);
  double total = 0.0;
  for (const Tree& tree : ensemble.trees) {
    for (const Node& node : tree.nodes) {
      if (node.is_leaf()) continue;
      gain[node.feature] += node.gain;
      total += node.gain;
    }
  }
  if (total > 0.0)
    for (double& g : gain) g = 100.0 * g / total;
  return gain;
}

namespace {

constexpr const char* kFormatVersion = "plad-gbdt-v1";

json node_to_json(const Node& node) {
  json j;
  if (node.is_leaf()) {
    j["value"] = node.value;
  } else {
    j["feature"] = node.feature;
    j["threshold"] = node.threshold;
    j["left"] = node.left;
    j["right"] = node.right;
    j["gain"] = node.gain;
  }
  j["cover"] = node.cover;
  return j;
}

Node node_from_json(const json& j) {
  Node node;
  if (!j.is_object()) throw SchemaError("node must be an object");
  node.cover = j.value("cover", 0.0);
  if (j.contains("feature")) {
    node.feature = j.at("feature").get<int>();
    node.threshold = j.at("threshold").get<double>();
    node.left = j.at("left").get<int>();
    node.right = j.at("right").get<int>();
    node.gain = j.value("gain", 0.0);
    if (node.feature < 0 || node.left < 0 || node.right < 0)
      throw SchemaError("split node indices must be non-negative");
    if (!(node.cover > 0.0)) throw SchemaError("split node cover must be positive");
  } else if (j.contains("value")) {
    node.value = j.at("value").get<double>();
  } else {
    throw SchemaError("node needs either a split or a value");
  }
  return node;
}

Task task_from_name(const std::string& name) {
  if (name == "binary") return Task::Binary;
  if (name == "multiclass") return Task::Multiclass;
  if (name == "regression") return Task::Regression;
  throw SchemaError("unknown task \"" + name + "\"");
}

}  // namespace

std::string ensemble_to_json(const Ensemble& ensemble) {
  json j;
  j["format_version"] = kFormatVersion;
  j["task"] = task_name(ensemble.task);
  j["class_labels"] = ensemble.class_labels;
  j["base_score"] = ensemble.base_score;
  j["learning_rate"] = ensemble.learning_rate;
  j["registry_version"] = ensemble.registry_version;
  j["n_features"] = ensemble.n_features;
  json trees = json::array();
  for (const Tree& tree : ensemble.trees) {
    json nodes = json::array();
    for (const Node& node : tree.nodes) nodes.push_back(node_to_json(node));
    trees.push_back(json{{"nodes", std::move(nodes)}});
  }
  j["trees"] = std::move(trees);
  return j.dump(2);
}

Ensemble ensemble_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format_version", "") != kFormatVersion)
      throw VersionMismatch("model format \"" + j.value("format_version", "") +
                            "\" is not \"" + kFormatVersion + "\"");
    Ensemble model;
    model.task = task_from_name(j.at("task").get<std::string>());
    model.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    model.base_score = j.at("base_score").get<std::vector<double>>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.registry_version = j.at("registry_version").get<std::string>();
    model.n_features = j.at("n_features").get<std::size_t>();
    features::registry_for_version(model.registry_version);  // unknown -> refusal
    for (const json& jt : j.at("trees")) {
      Tree tree;
      for (const json& jn : jt.at("nodes")) tree.nodes.push_back(node_from_json(jn));
      for (const Node& node : tree.nodes) {
        if (node.is_leaf()) continue;
        auto size = static_cast<int>(tree.nodes.size());
        if (node.left >= size || node.right >= size)
          throw SchemaError("split child index out of range");
        if (node.feature >= static_cast<int>(model.n_features))
          throw SchemaError("split feature index out of range");
      }
      model.trees.push_back(std::move(tree));
    }
    if (model.task != Task::Regression && model.class_labels.size() < 2)
      throw SchemaError("classifier needs at least two class labels");
    if (model.base_score.size() != model.outputs())
      throw SchemaError("base_score size does not match task");
    std::size_t outputs = model.outputs();
    if (outputs > 0 && model.trees.size() % outputs != 0)
      throw SchemaError("tree count is not a whole number of rounds");
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model file is missing fields: ") + e.what());
  }
}

void save_ensemble(const Ensemble& ensemble, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  out << ensemble_to_json(ensemble) << '\n';
  if (!out.flush()) throw IoError("failed writing \"" + path + "\"");
}

Ensemble load_ensemble(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ensemble_from_json(buffer.str());
}

}  // namespace plad::gbdt
