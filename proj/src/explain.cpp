#include "plad/explain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "plad/error.hpp"
#include "plad/parallel.hpp"

namespace plad::explain {

namespace {

/// Background covers for one tree: how many background rows pass through each
/// node. Every node must stay covered or the cover-weighted expectations are
/// undefined.
std::vector<double> background_covers(const gbdt::Tree& tree,
                                      const features::FeatureMatrix& background) {
  std::vector<double> covers(tree.nodes.size(), 0.0);
  for (const features::FeatureVector& row : background.rows) {
    int node = 0;
    for (;;) {
      covers[node] += 1.0;
      const gbdt::Node& n = tree.nodes[node];
      if (n.is_leaf()) break;
      node = row.values[n.feature] < n.threshold ? n.left : n.right;
    }
  }
  for (double c : covers)
    if (!(c > 0.0))
      throw InvalidArgument("background set leaves a tree node uncovered");
  return covers;
}

double tree_expectation(const gbdt::Tree& tree, const std::vector<double>& covers) {
  double total = 0.0;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].is_leaf()) total += tree.nodes[i].value * covers[i] / covers[0];
  return total;
}

/// Covers for every tree of an ensemble, computed once per background set.
struct CoverTable {
  std::vector<std::vector<double>> per_tree;

  CoverTable(const gbdt::Ensemble& ensemble, const features::FeatureMatrix& background) {
    if (background.rows.empty()) throw InvalidArgument("background set is empty");
    if (background.width() != ensemble.n_features)
      throw InvalidArgument("background width " + std::to_string(background.width()) +
                            " does not match the model's " +
                            std::to_string(ensemble.n_features) + " features");
    per_tree.reserve(ensemble.trees.size());
    for (const gbdt::Tree& tree : ensemble.trees)
      per_tree.push_back(background_covers(tree, background));
  }
};

// Path-dependent attribution after Lundberg's tree algorithm: the path holds
// one entry per unique feature seen so far, with the proportion of coalitions
// flowing through when the feature is absent (zero_fraction) or present
// (one_fraction), and the permutation weight of each path subset.
struct PathElem {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void extend(std::vector<PathElem>& path, double pz, double po, int feature) {
  int l = static_cast<int>(path.size());
  path.push_back({feature, pz, po, l == 0 ? 1.0 : 0.0});
  for (int i = l - 1; i >= 0; --i) {
    path[i + 1].pweight += po * path[i].pweight * (i + 1.0) / (l + 1.0);
    path[i].pweight = pz * path[i].pweight * (l - i) / (l + 1.0);
  }
}

void unwind(std::vector<PathElem>& path, std::size_t k) {
  std::size_t d = path.size() - 1;
  double po = path[k].one_fraction;
  double pz = path[k].zero_fraction;
  double next_one = path[d].pweight;
  for (int i = static_cast<int>(d) - 1; i >= 0; --i) {
    if (po != 0.0) {
      double tmp = path[i].pweight;
      path[i].pweight = next_one * (d + 1.0) / ((i + 1.0) * po);
      next_one = tmp - path[i].pweight * pz * (d - i) / (d + 1.0);
    } else {
      path[i].pweight = path[i].pweight * (d + 1.0) / (pz * (d - i));
    }
  }
  for (std::size_t i = k; i < d; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
  path.pop_back();
}

double unwound_sum(const std::vector<PathElem>& path, std::size_t k) {
  std::size_t d = path.size() - 1;
  double po = path[k].one_fraction;
  double pz = path[k].zero_fraction;
  double next_one = path[d].pweight;
  double total = 0.0;
  for (int i = static_cast<int>(d) - 1; i >= 0; --i) {
    if (po != 0.0) {
      double tmp = next_one * (d + 1.0) / ((i + 1.0) * po);
      total += tmp;
      next_one = path[i].pweight - tmp * pz * (d - i) / (d + 1.0);
    } else {
      total += path[i].pweight / pz * (d + 1.0) / (d - i);
    }
  }
  return total;
}

struct ShapWalker {
  const gbdt::Tree& tree;
  const std::vector<double>& covers;
  const std::vector<double>& x;
  std::vector<double>& phi;

  void recurse(int node, std::vector<PathElem> path, double pz, double po, int feature) {
    extend(path, pz, po, feature);
    const gbdt::Node& n = tree.nodes[node];
    if (n.is_leaf()) {
      for (std::size_t i = 1; i < path.size(); ++i) {
        double w = unwound_sum(path, i);
        phi[path[i].feature] +=
            w * (path[i].one_fraction - path[i].zero_fraction) * n.value;
      }
      return;
    }
    int hot = x[n.feature] < n.threshold ? n.left : n.right;
    int cold = hot == n.left ? n.right : n.left;
    double iz = 1.0;
    double io = 1.0;
    std::size_t k = 0;  // earlier occurrence of this feature on the path
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i].feature == n.feature) {
        k = i;
        break;
      }
    }
    if (k > 0) {
      iz = path[k].zero_fraction;
      io = path[k].one_fraction;
      unwind(path, k);
    }
    recurse(hot, path, iz * covers[hot] / covers[node], io, n.feature);
    recurse(cold, path, iz * covers[cold] / covers[node], 0.0, n.feature);
  }
};

void tree_shap(const gbdt::Tree& tree, const std::vector<double>& covers,
               const std::vector<double>& x, std::vector<double>& phi) {
  if (tree.nodes[0].is_leaf()) return;  // constant tree contributes only to phi0
  ShapWalker walker{tree, covers, x, phi};
  walker.recurse(0, {}, 1.0, 1.0, -1);
}

std::vector<AttributionResult> attribute(const gbdt::Ensemble& ensemble,
                                         const features::FeatureVector& row,
                                         const CoverTable& covers) {
  if (row.values.size() != ensemble.n_features)
    throw InvalidArgument("input width " + std::to_string(row.values.size()) +
                          " does not match the model's " +
                          std::to_string(ensemble.n_features) + " features");
  std::size_t outputs = ensemble.outputs();
  std::vector<double> margin = gbdt::margins(ensemble, row.values);

  std::vector<AttributionResult> results(outputs);
  for (std::size_t k = 0; k < outputs; ++k) {
    AttributionResult& res = results[k];
    res.post_id = row.post_id;
    if (ensemble.task == gbdt::Task::Regression) {
      res.output = "value";
    } else if (ensemble.task == gbdt::Task::Binary) {
      res.output = ensemble.class_labels[1];  // margin is the log-odds of this class
    } else {
      res.output = ensemble.class_labels[k];
    }
    res.base_value = ensemble.base_score[k];
    res.phi.assign(ensemble.n_features, 0.0);
    res.prediction = margin[k];
    for (std::size_t t = k; t < ensemble.trees.size(); t += outputs) {
      res.base_value += tree_expectation(ensemble.trees[t], covers.per_tree[t]);
      tree_shap(ensemble.trees[t], covers.per_tree[t], row.values, res.phi);
    }
  }
  return results;
}

}  // namespace

std::vector<AttributionResult> shap_values(const gbdt::Ensemble& ensemble,
                                           const features::FeatureVector& row,
                                           const features::FeatureMatrix& background) {
  CoverTable covers(ensemble, background);
  return attribute(ensemble, row, covers);
}

std::vector<std::vector<AttributionResult>> shap_matrix(
    const gbdt::Ensemble& ensemble, const features::FeatureMatrix& matrix,
    const features::FeatureMatrix& background, int n_threads) {
  CoverTable covers(ensemble, background);
  std::vector<std::vector<AttributionResult>> out(matrix.rows.size());
  std::vector<std::string> errors(matrix.rows.size());
  parallel::for_range(matrix.rows.size(), n_threads, [&](std::size_t r) {
    try {
      out[r] = attribute(ensemble, matrix.rows[r], covers);
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  });
  for (const std::string& err : errors)
    if (!err.empty()) throw InvalidArgument(err);
  return out;
}

std::vector<std::vector<double>> brute_force_shap(const gbdt::Ensemble& ensemble,
                                                  const std::vector<double>& x,
                                                  const features::FeatureMatrix& background) {
  std::size_t m = ensemble.n_features;
  if (m > 16)
    throw InvalidArgument("oracle limit: brute force handles at most 16 features, got " +
                          std::to_string(m));
  if (x.size() != m)
    throw InvalidArgument("input width " + std::to_string(x.size()) +
                          " does not match the model's " + std::to_string(m) + " features");
  CoverTable covers(ensemble, background);

  // conditional expectation of one tree given the coalition mask
  auto masked_value = [&x](const gbdt::Tree& tree, const std::vector<double>& cov,
                           std::uint32_t mask) {
    auto rec = [&](auto&& self, int node) -> double {
      const gbdt::Node& n = tree.nodes[node];
      if (n.is_leaf()) return n.value;
      if (mask >> n.feature & 1u)
        return self(self, x[n.feature] < n.threshold ? n.left : n.right);
      return (cov[n.left] * self(self, n.left) + cov[n.right] * self(self, n.right)) /
             cov[node];
    };
    return rec(rec, 0);
  };

  std::size_t outputs = ensemble.outputs();
  std::uint32_t n_masks = 1u << m;
  std::vector<double> fact(m + 1, 1.0);
  for (std::size_t i = 1; i <= m; ++i) fact[i] = fact[i - 1] * static_cast<double>(i);

  std::vector<std::vector<double>> phi(outputs, std::vector<double>(m, 0.0));
  std::vector<double> v(n_masks);
  for (std::size_t k = 0; k < outputs; ++k) {
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
      double total = ensemble.base_score[k];
      for (std::size_t t = k; t < ensemble.trees.size(); t += outputs)
        total += masked_value(ensemble.trees[t], covers.per_tree[t], mask);
      v[mask] = total;
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t bit = 1u << i;
      for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
        if (mask & bit) continue;
        auto s = static_cast<std::size_t>(std::popcount(mask));
        double w = fact[s] * fact[m - s - 1] / fact[m];
        phi[k][i] += w * (v[mask | bit] - v[mask]);
      }
    }
  }
  return phi;
}

GlobalImportance global_importance(const gbdt::Ensemble& ensemble,
                                   const features::FeatureMatrix& matrix,
                                   const features::FeatureMatrix& background,
                                   int n_threads) {
  if (matrix.rows.empty()) throw InvalidArgument("nothing to explain: matrix is empty");
  auto rows = shap_matrix(ensemble, matrix, background, n_threads);

  std::size_t m = ensemble.n_features;
  GlobalImportance out;
  out.mean_abs_phi.assign(m, 0.0);
  std::size_t n_outputs = 0;
  for (const auto& per_output : rows) {
    for (const AttributionResult& res : per_output) {
      ++n_outputs;
      for (std::size_t i = 0; i < m; ++i) out.mean_abs_phi[i] += std::abs(res.phi[i]);
    }
  }
  for (double& v : out.mean_abs_phi) v /= static_cast<double>(n_outputs);

  out.ranking.resize(m);
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&out](std::size_t a, std::size_t b) {
                     return out.mean_abs_phi[a] > out.mean_abs_phi[b];
                   });
  return out;
}

void save_attributions_csv(const std::vector<AttributionResult>& results,
                           const std::vector<std::string>& feature_ids,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  out << "post_id,output,base_value";
  for (const std::string& id : feature_ids) out << ',' << id;
  out << '\n';
  char buf[40];
  for (const AttributionResult& res : results) {
    if (res.phi.size() != feature_ids.size())
      throw InvalidArgument("phi width does not match the feature id list");
    std::snprintf(buf, sizeof buf, "%.12g", res.base_value);
    out << res.post_id << ',' << res.output << ',' << buf;
    for (double v : res.phi) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out.flush()) throw IoError("failed writing \"" + path + "\"");
}

void save_ranking_json(const GlobalImportance& importance,
                       const std::vector<std::string>& feature_ids,
                       const std::string& path) {
  if (importance.mean_abs_phi.size() != feature_ids.size())
    throw InvalidArgument("importance width does not match the feature id list");
  nlohmann::json ranking = nlohmann::json::array();
  for (std::size_t idx : importance.ranking) {
    ranking.push_back({{"feature", feature_ids[idx]},
                       {"mean_abs_phi", importance.mean_abs_phi[idx]}});
  }
  nlohmann::json j;
  j["ranking"] = std::move(ranking);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  out << j.dump(2) << '\n';
  if (!out.flush()) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace plad::explain
