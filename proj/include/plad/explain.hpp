#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plad/features.hpp"
#include "plad/gbdt.hpp"

namespace plad::explain {

// ---------------------------------------------------------------------------
// Attribution types
// ---------------------------------------------------------------------------

/// Additive attribution of one margin output: base_value + sum(phi) equals
/// the prediction within 1e-9. `output` names the margin being explained
/// (class label, or "value" for a regressor).
struct AttributionResult {
  std::string post_id;
  std::string output;
  double base_value = 0.0;
  std::vector<double> phi;
  double prediction = 0.0;  // margin space
};

struct GlobalImportance {
  std::vector<double> mean_abs_phi;   // per feature, >= 0
  std::vector<std::size_t> ranking;   // feature indices, descending importance
};

// ---------------------------------------------------------------------------
// Shapley attribution
// ---------------------------------------------------------------------------

/// Path-dependent tree attribution. Branch weights on absent features come
/// from routing the background set through each tree, which makes base_value
/// the background mean margin and keeps local accuracy exact. One result per
/// model output (1 for binary and regression, K for multiclass).
std::vector<AttributionResult> shap_values(const gbdt::Ensemble& ensemble,
                                           const features::FeatureVector& row,
                                           const features::FeatureMatrix& background);

/// Attribution for every matrix row; parallel across rows with the serial
/// result reproduced exactly.
std::vector<std::vector<AttributionResult>> shap_matrix(
    const gbdt::Ensemble& ensemble, const features::FeatureMatrix& matrix,
    const features::FeatureMatrix& background, int n_threads = 1);

/// Exact factorial-weighted Shapley sum over all coalitions, one phi vector
/// per output. Validation oracle; refuses more than 16 features.
std::vector<std::vector<double>> brute_force_shap(const gbdt::Ensemble& ensemble,
                                                  const std::vector<double>& x,
                                                  const features::FeatureMatrix& background);

/// Mean |phi| per feature across rows, averaged over class outputs.
GlobalImportance global_importance(const gbdt::Ensemble& ensemble,
                                   const features::FeatureMatrix& matrix,
                                   const features::FeatureMatrix& background,
                                   int n_threads = 1);

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

/// CSV with one row per explained output: post_id, output, base_value, then
/// one phi column per feature id.
void save_attributions_csv(const std::vector<AttributionResult>& results,
                           const std::vector<std::string>& feature_ids,
                           const std::string& path);

/// JSON ranking {"ranking":[{"feature","mean_abs_phi"}...]} in descending
/// order.
void save_ranking_json(const GlobalImportance& importance,
                       const std::vector<std::string>& feature_ids,
                       const std::string& path);

}  // namespace plad::explain
