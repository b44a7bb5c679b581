// Serial-vs-parallel kernel benchmark. Each kernel that accepts a thread
// count is timed on one thread (the reference path) and on N threads, and
// the outputs are compared bit for bit; any divergence fails the run. On a
// single-core host the interesting column is "identical", not "speedup".
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plad/corpus.hpp"
#include "plad/explain.hpp"
#include "plad/features.hpp"
#include "plad/gbdt.hpp"
#include "plad/parallel.hpp"
#include "plad/rubric.hpp"

using namespace plad;

namespace {

template <class Fn>
double best_seconds(int repeat, Fn&& fn) {
  double best = 0.0;
  for (int i = 0; i < repeat; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (i == 0 || secs < best) best = secs;
  }
  return best;
}

bool same_matrix(const features::FeatureMatrix& a, const features::FeatureMatrix& b) {
  if (a.registry_version != b.registry_version || a.labels != b.labels ||
      a.rows.size() != b.rows.size())
    return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].post_id != b.rows[i].post_id) return false;
    if (a.rows[i].values != b.rows[i].values) return false;  // bitwise, no tolerance
  }
  return true;
}

bool same_attributions(const std::vector<std::vector<explain::AttributionResult>>& a,
                       const std::vector<std::vector<explain::AttributionResult>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) return false;
    for (std::size_t k = 0; k < a[r].size(); ++k) {
      const explain::AttributionResult& x = a[r][k];
      const explain::AttributionResult& y = b[r][k];
      if (x.post_id != y.post_id || x.output != y.output || x.base_value != y.base_value ||
          x.prediction != y.prediction || x.phi != y.phi)
        return false;
    }
  }
  return true;
}

void report(const char* kernel, double serial, double parallel, bool identical) {
  std::printf("%-10s %10.3fs %10.3fs %8.2fx   %s\n", kernel, serial, parallel,
              parallel > 0.0 ? serial / parallel : 0.0, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = parallel::max_threads();
  std::size_t per_class = 400;
  int rounds = 200;
  int repeat = 3;

  CLI::App app{"serial vs parallel kernel comparison"};
  app.add_option("--threads", threads, "parallel thread count")->check(CLI::PositiveNumber);
  app.add_option("--posts", per_class, "posts per class in the synthetic corpus");
  app.add_option("--rounds", rounds, "boosting rounds for the training kernel");
  app.add_option("--repeat", repeat, "timed repetitions; best run wins")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d, posts: %zu per class, rounds: %d, repeat: %d\n\n", threads,
              per_class, rounds, repeat);
  std::printf("%-10s %11s %11s %9s   %s\n", "kernel", "serial", "parallel", "speedup",
              "identical");

  std::vector<corpus::Post> posts =
      corpus::synthesize_corpus(corpus::default_fixture(per_class, per_class), 7);
  rubric::MockBackend backend;
  const std::vector<rubric::RubricCriterion>& rubric_set = rubric::default_rubric_set();

  // Feature extraction: one independent row per post.
  features::ExtractConfig serial_cfg;
  serial_cfg.score.seed = 7;
  features::ExtractConfig parallel_cfg = serial_cfg;
  parallel_cfg.n_threads = threads;
  features::FeatureMatrix matrix;
  features::FeatureMatrix parallel_matrix;
  double extract_serial = best_seconds(repeat, [&] {
    matrix = features::extract_matrix(posts, rubric_set, backend, nullptr, serial_cfg);
  });
  double extract_parallel = best_seconds(repeat, [&] {
    parallel_matrix = features::extract_matrix(posts, rubric_set, backend, nullptr, parallel_cfg);
  });
  bool extract_same = same_matrix(matrix, parallel_matrix);
  report("extract", extract_serial, extract_parallel, extract_same);

  // Boosting: the split search scans features in parallel and merges in
  // feature order, so the chosen splits cannot depend on the thread count.
  gbdt::TrainConfig train_cfg;
  train_cfg.rounds = rounds;
  train_cfg.max_depth = 6;
  train_cfg.seed = 7;
  gbdt::TrainConfig train_par = train_cfg;
  train_par.n_threads = threads;
  gbdt::Ensemble model;
  gbdt::Ensemble parallel_model;
  double train_serial = best_seconds(repeat, [&] { model = gbdt::train(matrix, train_cfg); });
  double train_parallel =
      best_seconds(repeat, [&] { parallel_model = gbdt::train(matrix, train_par); });
  bool train_same = gbdt::ensemble_to_json(model) == gbdt::ensemble_to_json(parallel_model);
  report("train", train_serial, train_parallel, train_same);

  // Attribution: one independent result row per matrix row.
  std::vector<std::vector<explain::AttributionResult>> shap;
  std::vector<std::vector<explain::AttributionResult>> parallel_shap;
  double shap_serial =
      best_seconds(repeat, [&] { shap = explain::shap_matrix(model, matrix, matrix, 1); });
  double shap_parallel = best_seconds(
      repeat, [&] { parallel_shap = explain::shap_matrix(model, matrix, matrix, threads); });
  bool shap_same = same_attributions(shap, parallel_shap);
  report("shap", shap_serial, shap_parallel, shap_same);

  bool all_same = extract_same && train_same && shap_same;
  std::printf("\n%s\n", all_same ? "parallel kernels reproduce the serial reference exactly"
                                 : "PARALLEL OUTPUT DIVERGED FROM THE SERIAL REFERENCE");
  return all_same ? 0 : 1;
}
