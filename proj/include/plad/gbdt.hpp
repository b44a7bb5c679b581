#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plad/features.hpp"

namespace plad::gbdt {

// ---------------------------------------------------------------------------
// Model types
// ---------------------------------------------------------------------------

/// One node of a regression tree. feature < 0 marks a leaf; split nodes carry
/// the selection gain and every node carries its cover (training rows routed
/// through it).
struct Node {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output, learning rate already applied
  double gain = 0.0;
  double cover = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<Node> nodes;  // root at index 0
};

enum class Task { Binary, Multiclass, Regression };

std::string task_name(Task task);

/// Boosted ensemble. Trees are stored round-major: one tree per round for
/// binary and regression, K per round for softmax (round r, class k at
/// trees[r * K + k]). Immutable after training; safe to share across threads.
struct Ensemble {
  Task task = Task::Binary;
  std::vector<std::string> class_labels;  // sorted; empty for regression
  std::vector<double> base_score;        // 1 entry, or K for multiclass
  double learning_rate = 0.1;
  std::string registry_version;
  std::size_t n_features = 0;
  std::vector<Tree> trees;

  std::size_t outputs() const {
    return task == Task::Multiclass ? class_labels.size() : 1;
  }
  std::size_t rounds() const {
    std::size_t per = outputs();
    return per == 0 ? 0 : trees.size() / per;
  }
};

struct TrainConfig {
  int rounds = 300;
  int max_depth = 6;
  double learning_rate = 0.1;
  int min_samples_leaf = 5;
  double min_gain = 0.0;
  double subsample = 1.0;  // deterministic row subsampling when < 1
  std::uint64_t seed = 0;
  int n_threads = 1;  // parallel split search; result identical to serial
};

struct TrainReport {
  std::vector<double> loss_trace;  // mean cross-entropy (or MSE) per round
};

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

/// Classification on string labels; binary logistic for two classes, softmax
/// above that. base_score is the log-odds (or per-class log-priors) of the
/// training labels.
Ensemble train(const features::FeatureMatrix& matrix, const TrainConfig& config = {},
               TrainReport* report = nullptr);

/// Squared-error boosting against real targets, one per matrix row.
Ensemble train_regressor(const features::FeatureMatrix& matrix,
                         const std::vector<double>& targets,
                         const TrainConfig& config = {}, TrainReport* report = nullptr);

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

/// Raw additive scores, one per output: base_score plus summed tree values.
std::vector<double> margins(const Ensemble& ensemble, const std::vector<double>& x);

/// Sigmoid (binary) or softmax (multiclass) over margins; sums to 1.
std::vector<double> predict_proba(const Ensemble& ensemble, const std::vector<double>& x);

/// Argmax of predict_proba; ties go to the lowest class index.
std::string predict(const Ensemble& ensemble, const std::vector<double>& x);

/// Regression prediction (the margin itself).
double predict_value(const Ensemble& ensemble, const std::vector<double>& x);

// ---------------------------------------------------------------------------
// Evaluation and importance
// ---------------------------------------------------------------------------

struct EvalReport {
  std::vector<std::string> class_labels;
  std::vector<std::vector<long long>> confusion;  // [truth][predicted]
  double accuracy = 0.0;         // all four in percent
  double macro_precision = 0.0;  // undefined per-class precision counts as 0
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

/// Classifier metrics on a labeled matrix of the same registry version.
EvalReport evaluate(const Ensemble& ensemble, const features::FeatureMatrix& matrix);

/// Total split gain per feature, normalized to percentage points (sums to 100;
/// all zeros when no tree ever split).
std::vector<double> feature_importance(const Ensemble& ensemble);

// ---------------------------------------------------------------------------
// Persistence: versioned JSON tree dump
// ---------------------------------------------------------------------------

void save_ensemble(const Ensemble& ensemble, const std::string& path);
Ensemble load_ensemble(const std::string& path);

std::string ensemble_to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const std::string& text);

}  // namespace plad::gbdt
