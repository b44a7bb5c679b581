#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "plad/gbdt.hpp"

namespace plad::cli {

inline constexpr char kReportSchema[] = "plad-report-v1";

/// Shared run settings. Every field has a flag of the same spelling (dashes
/// for underscores); flags override values loaded from a --config JSON file,
/// which in turn override these defaults.
struct RunConfig {
  // paths
  std::string corpus;
  std::string cache_dir = "cache";
  std::string model_dir = "models";
  std::string report_dir = "reports";

  // judge backend
  std::string backend = "mock";  // "mock" or "remote"
  std::string endpoint;          // remote base URL
  std::string judge_model = "plad-judge-1";
  std::string api_key_env = "PLAD_API_KEY";
  int max_in_flight = 2;  // remote request concurrency cap
  int rpm = 0;            // requests per minute; 0 = unlimited

  // training
  int rounds = 300;
  int max_depth = 6;
  double learning_rate = 0.1;
  int min_samples_leaf = 5;
  double min_gain = 0.0;
  double subsample = 1.0;
  double holdout = 0.2;        // held-out fraction shared by train/evaluate
  std::string task = "binary"; // "binary", "provider" or "model"

  // analysis
  double threshold = 0.5;  // AI verdict cutoff on P(ai)
  double tier_low = 0.2;
  double tier_high = 0.8;
  double split_ratio = 0.8;  // zero-shot seen-class split

  // provenance
  std::uint64_t seed = 0;
  int n_threads = 1;

  gbdt::TrainConfig train_config() const;
};

/// Strict parse: unknown keys are schema errors so config typos surface.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

/// Dispatches one command (args without the program name) and returns the
/// process exit code. Progress lines go to `out`; any failure emits a single
/// machine-parseable "PLAD_ERROR {...}" trailer on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plad::cli
