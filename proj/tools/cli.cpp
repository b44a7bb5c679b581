#include "plad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "plad/analysis.hpp"
#include "plad/corpus.hpp"
#include "plad/datetime.hpp"
#include "plad/error.hpp"
#include "plad/explain.hpp"
#include "plad/features.hpp"
#include "plad/rng.hpp"
#include "plad/rubric.hpp"
#include "plad/svg.hpp"

namespace plad::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

gbdt::TrainConfig RunConfig::train_config() const {
  gbdt::TrainConfig t;
  t.rounds = rounds;
  t.max_depth = max_depth;
  t.learning_rate = learning_rate;
  t.min_samples_leaf = min_samples_leaf;
  t.min_gain = min_gain;
  t.subsample = subsample;
  t.seed = seed;
  t.n_threads = n_threads;
  return t;
}

json config_to_json(const RunConfig& c) {
  return {{"corpus", c.corpus},
          {"cache_dir", c.cache_dir},
          {"model_dir", c.model_dir},
          {"report_dir", c.report_dir},
          {"backend", c.backend},
          {"endpoint", c.endpoint},
          {"judge_model", c.judge_model},
          {"api_key_env", c.api_key_env},
          {"max_in_flight", c.max_in_flight},
          {"rpm", c.rpm},
          {"rounds", c.rounds},
          {"max_depth", c.max_depth},
          {"learning_rate", c.learning_rate},
          {"min_samples_leaf", c.min_samples_leaf},
          {"min_gain", c.min_gain},
          {"subsample", c.subsample},
          {"holdout", c.holdout},
          {"task", c.task},
          {"threshold", c.threshold},
          {"tier_low", c.tier_low},
          {"tier_high", c.tier_high},
          {"split_ratio", c.split_ratio},
          {"seed", c.seed},
          {"n_threads", c.n_threads}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "corpus") c.corpus = value.get<std::string>();
      else if (key == "cache_dir") c.cache_dir = value.get<std::string>();
      else if (key == "model_dir") c.model_dir = value.get<std::string>();
      else if (key == "report_dir") c.report_dir = value.get<std::string>();
      else if (key == "backend") c.backend = value.get<std::string>();
      else if (key == "endpoint") c.endpoint = value.get<std::string>();
      else if (key == "judge_model") c.judge_model = value.get<std::string>();
      else if (key == "api_key_env") c.api_key_env = value.get<std::string>();
      else if (key == "max_in_flight") c.max_in_flight = value.get<int>();
      else if (key == "rpm") c.rpm = value.get<int>();
      else if (key == "rounds") c.rounds = value.get<int>();
      else if (key == "max_depth") c.max_depth = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "min_samples_leaf") c.min_samples_leaf = value.get<int>();
      else if (key == "min_gain") c.min_gain = value.get<double>();
      else if (key == "subsample") c.subsample = value.get<double>();
      else if (key == "holdout") c.holdout = value.get<double>();
      else if (key == "task") c.task = value.get<std::string>();
      else if (key == "threshold") c.threshold = value.get<double>();
      else if (key == "tier_low") c.tier_low = value.get<double>();
      else if (key == "tier_high") c.tier_high = value.get<double>();
      else if (key == "split_ratio") c.split_ratio = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "n_threads") c.n_threads = value.get<int>();
      else throw SchemaError("unknown config key \"" + key + "\"");
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad config value: ") + e.what());
  }
  return c;
}

namespace {

// ---------------------------------------------------------------------------
// Filesystem and report plumbing
// ---------------------------------------------------------------------------

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

void ensure_parent(const std::string& path) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) ensure_dir(parent.string());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out.flush()) throw IoError("failed writing " + path);
}

void write_json_file(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Every command deposits one manifest next to its reports: the config hash,
/// registry version, seed and input digests pin down everything the outputs
/// depend on, so equal manifests imply byte-identical reruns.
struct Manifest {
  std::string command;
  std::string registry_version = features::kRegistryVersion;
  json options = json::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // name -> path
  json extra = json::object();
};

std::string write_manifest(const RunConfig& config, const Manifest& m) {
  json hashed = {{"command", m.command}, {"config", config_to_json(config)}, {"options", m.options}};
  json j;
  j["schema"] = kReportSchema;
  j["command"] = m.command;
  j["config_hash"] = rng::digest128_hex(hashed.dump());
  j["registry_version"] = m.registry_version;
  j["seed"] = config.seed;
  j["options"] = m.options;
  json inputs = json::object();
  for (const auto& [name, path] : m.inputs)
    inputs[name] = {{"path", path}, {"digest", rng::digest128_hex(read_file(path))}};
  j["inputs"] = inputs;
  for (const auto& [key, value] : m.extra.items()) j[key] = value;

  std::string path = config.report_dir + "/" + m.command + "-manifest.json";
  write_json_file(path, j);
  return path;
}

json report_head(const RunConfig& config) {
  return {{"schema", kReportSchema}, {"seed", config.seed}};
}

// ---------------------------------------------------------------------------
// Shared loading helpers
// ---------------------------------------------------------------------------

std::string require_corpus(const RunConfig& config) {
  if (config.corpus.empty()) throw InvalidArgument("no corpus given; pass --corpus <file.jsonl>");
  return config.corpus;
}

std::string default_matrix(const RunConfig& config, const std::string& flag_value) {
  return flag_value.empty() ? config.report_dir + "/matrix.csv" : flag_value;
}

std::string default_model(const RunConfig& config, const std::string& flag_value) {
  return flag_value.empty() ? config.model_dir + "/model.json" : flag_value;
}

std::vector<corpus::Post> load_posts(const std::string& path, const std::string& providers,
                                     std::ostream& out) {
  corpus::ProviderRegistry registry;
  const corpus::ProviderRegistry* registry_ptr = nullptr;
  if (!providers.empty()) {
    registry = corpus::load_provider_registry(providers);
    registry_ptr = &registry;
  }
  corpus::LoadReport report = corpus::load_jsonl(path, registry_ptr);
  if (!report.errors.empty())
    out << "warning: skipped " << report.errors.size() << " invalid line(s) in " << path << "\n";
  return std::move(report.posts);
}

/// Matrix plus the row-aligned ids sidecar when present (CSV drops post ids).
features::FeatureMatrix load_matrix(const std::string& path, bool require_ids) {
  features::FeatureMatrix matrix = features::load_matrix_csv(path);
  std::string ids_path = path + ".ids";
  if (!fs::exists(ids_path)) {
    if (require_ids)
      throw InvalidArgument("ids sidecar " + ids_path +
                            " not found; extract writes it next to the matrix");
    return matrix;
  }
  std::ifstream in(ids_path);
  if (!in) throw IoError("cannot read " + ids_path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ids.push_back(line);
  if (ids.size() != matrix.rows.size())
    throw SchemaError("ids sidecar has " + std::to_string(ids.size()) + " ids for " +
                      std::to_string(matrix.rows.size()) + " rows");
  for (std::size_t i = 0; i < ids.size(); ++i) matrix.rows[i].post_id = ids[i];
  return matrix;
}

void reject_unlabeled(const features::FeatureMatrix& matrix, const std::string& command) {
  if (matrix.labels.empty())
    throw InvalidArgument(command + " needs a labeled matrix (extract a labeled corpus first)");
  for (const std::string& label : matrix.labels)
    if (label == "unlabeled")
      throw InvalidArgument(command +
                            " cannot use unlabeled rows; they belong to the analyze commands");
}

features::FeatureMatrix take_rows(const features::FeatureMatrix& matrix,
                                  const std::vector<std::size_t>& idx) {
  features::FeatureMatrix out;
  out.registry_version = matrix.registry_version;
  for (std::size_t i : idx) {
    out.rows.push_back(matrix.rows[i]);
    if (!matrix.labels.empty()) out.labels.push_back(matrix.labels[i]);
  }
  return out;
}

/// train and evaluate agree on the held-out rows by deriving the same split.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> holdout_split(
    const RunConfig& config, const std::vector<std::string>& labels) {
  if (config.holdout < 0.0 || config.holdout >= 1.0)
    throw InvalidArgument("holdout fraction must be in [0, 1)");
  std::vector<std::size_t> all(labels.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (config.holdout == 0.0) return {all, all};
  return analysis::stratified_split_indices(labels, 1.0 - config.holdout,
                                            rng::derive_seed(config.seed, "cli-split"));
}

std::vector<std::string> mapped_labels(const features::FeatureMatrix& matrix,
                                       const std::string& task) {
  std::vector<std::string> out;
  out.reserve(matrix.labels.size());
  for (const std::string& label : matrix.labels) out.push_back(analysis::task_label(label, task));
  return out;
}

std::unique_ptr<rubric::ChatBackend> make_backend(const RunConfig& config) {
  if (config.backend == "mock") return std::make_unique<rubric::MockBackend>();
  if (config.backend != "remote")
    throw InvalidArgument("backend must be \"mock\" or \"remote\", got \"" + config.backend + "\"");
  if (config.endpoint.empty())
    throw InvalidArgument("remote backend needs --endpoint <base-url>");
  rubric::HttpBackendConfig http;
  http.base_url = config.endpoint;
  http.model = config.judge_model;
  http.api_key_env = config.api_key_env;
  return std::make_unique<rubric::HttpBackend>(http);
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOpts {
  std::string providers, out;
};

void cmd_ingest(const RunConfig& config, const IngestOpts& opts, std::ostream& out) {
  std::string path = require_corpus(config);
  corpus::ProviderRegistry registry;
  const corpus::ProviderRegistry* registry_ptr = nullptr;
  if (!opts.providers.empty()) {
    registry = corpus::load_provider_registry(opts.providers);
    registry_ptr = &registry;
  }
  corpus::LoadReport loaded = corpus::load_jsonl(path, registry_ptr);

  json report = report_head(config);
  report["n_posts"] = loaded.posts.size();
  report["n_rejected"] = loaded.errors.size();
  json errors = json::array();
  constexpr std::size_t kErrorCap = 200;
  for (std::size_t i = 0; i < loaded.errors.size() && i < kErrorCap; ++i)
    errors.push_back({{"line", loaded.errors[i].line}, {"message", loaded.errors[i].message}});
  report["errors"] = errors;
  report["errors_truncated"] = loaded.errors.size() > kErrorCap;

  json domains = json::array();
  for (const auto& row : corpus::summarize(loaded.posts)) {
    domains.push_back({{"domain", corpus::domain_name(row.domain)},
                       {"count", row.count},
                       {"mean_length", row.mean_length},
                       {"mean_likes", row.mean_likes},
                       {"mean_comments", row.mean_comments},
                       {"mean_collections", row.mean_collections}});
  }
  report["domains"] = domains;
  std::map<std::string, std::size_t> label_counts;
  for (const auto& post : loaded.posts) ++label_counts[post.authorship.label()];
  report["labels"] = label_counts;

  if (!opts.out.empty()) {
    ensure_parent(opts.out);
    corpus::save_jsonl(loaded.posts, opts.out);
    report["clean_corpus"] = opts.out;
  }

  std::string report_path = config.report_dir + "/ingest.json";
  write_json_file(report_path, report);

  Manifest m;
  m.command = "ingest";
  m.options = {{"providers", opts.providers}, {"out", opts.out}};
  m.inputs = {{"corpus", path}};
  if (!opts.providers.empty()) m.inputs.emplace_back("providers", opts.providers);
  m.extra = {{"n_posts", loaded.posts.size()}, {"n_rejected", loaded.errors.size()}};
  write_manifest(config, m);

  out << "ingest: " << loaded.posts.size() << " posts accepted, " << loaded.errors.size()
      << " rejected -> " << report_path << "\n";
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOpts {
  std::string fixture = "default";
  std::size_t count = 0;  // per class; 0 = fixture default
  std::string out;
};

void cmd_synth(const RunConfig& config, const SynthOpts& opts, std::ostream& out) {
  corpus::GeneratorConfig generator;
  if (opts.fixture == "default")
    generator = opts.count ? corpus::default_fixture(opts.count, opts.count)
                           : corpus::default_fixture();
  else if (opts.fixture == "lexical")
    generator = opts.count ? corpus::lexical_signal_fixture(opts.count)
                           : corpus::lexical_signal_fixture();
  else if (opts.fixture == "providers")
    generator = opts.count ? corpus::provider_family_fixture(opts.count)
                           : corpus::provider_family_fixture();
  else if (opts.fixture == "exploration")
    generator = opts.count ? corpus::exploration_fixture(opts.count)
                           : corpus::exploration_fixture();
  else
    throw InvalidArgument("unknown fixture \"" + opts.fixture +
                          "\"; expected default, lexical, providers or exploration");

  std::vector<corpus::Post> posts = corpus::synthesize_corpus(generator, config.seed);
  std::string path = opts.out.empty() ? config.report_dir + "/corpus.jsonl" : opts.out;
  ensure_parent(path);
  corpus::save_jsonl(posts, path);

  Manifest m;
  m.command = "synth";
  m.options = {{"fixture", opts.fixture}, {"count", opts.count}, {"out", path}};
  m.extra = {{"n_posts", posts.size()}};
  write_manifest(config, m);

  out << "synth: " << posts.size() << " posts (" << opts.fixture << " fixture) -> " << path
      << "\n";
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractOpts {
  std::string providers, out;
  std::size_t limit = 0;
};

void cmd_extract(const RunConfig& config, const ExtractOpts& opts, std::ostream& out) {
  std::string path = require_corpus(config);
  std::vector<corpus::Post> posts = load_posts(path, opts.providers, out);
  if (opts.limit > 0 && posts.size() > opts.limit) posts.resize(opts.limit);
  if (posts.empty()) throw InvalidArgument("corpus " + path + " has no valid posts");

  ensure_dir(config.cache_dir);
  rubric::ScoreCache cache(config.cache_dir);
  std::unique_ptr<rubric::ChatBackend> backend = make_backend(config);
  rubric::RateLimiter limiter(config.rpm);

  features::ExtractConfig extract_config;
  extract_config.score.seed = config.seed;
  extract_config.n_threads = config.backend == "remote"
                                 ? std::min(config.n_threads, config.max_in_flight)
                                 : config.n_threads;
  extract_config.limiter = &limiter;

  rubric::ScoreStats stats;
  features::FeatureMatrix matrix = features::extract_matrix(
      posts, rubric::default_rubric(), *backend, &cache, extract_config, &stats);

  std::string matrix_path = opts.out.empty() ? config.report_dir + "/matrix.csv" : opts.out;
  ensure_parent(matrix_path);
  features::save_matrix_csv(matrix, matrix_path);
  std::string ids;
  for (const auto& row : matrix.rows) ids += row.post_id + "\n";
  write_text(matrix_path + ".ids", ids);

  Manifest m;
  m.command = "extract";
  m.registry_version = matrix.registry_version;
  m.options = {{"limit", opts.limit}, {"out", matrix_path}, {"providers", opts.providers}};
  m.inputs = {{"corpus", path}};
  m.extra = {{"backend_calls", stats.backend_calls},
             {"cache_hits", stats.cache_hits},
             {"n_rows", matrix.rows.size()}};
  write_manifest(config, m);

  out << "extract: " << matrix.rows.size() << " rows -> " << matrix_path << " ("
      << stats.backend_calls << " backend calls, " << stats.cache_hits << " cache hits)\n";
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOpts {
  std::string matrix, model_out;
};

void cmd_train(const RunConfig& config, const TrainOpts& opts, std::ostream& out) {
  std::string matrix_path = default_matrix(config, opts.matrix);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  reject_unlabeled(matrix, "train");

  auto [train_idx, test_idx] = holdout_split(config, matrix.labels);
  features::FeatureMatrix train_matrix = take_rows(matrix, train_idx);
  train_matrix.labels = mapped_labels(train_matrix, config.task);

  gbdt::TrainReport trace;
  gbdt::Ensemble model = gbdt::train(train_matrix, config.train_config(), &trace);

  std::string model_path = default_model(config, opts.model_out);
  ensure_parent(model_path);
  gbdt::save_ensemble(model, model_path);

  json report = report_head(config);
  report["task"] = config.task;
  report["classes"] = model.class_labels;
  report["n_train_rows"] = train_idx.size();
  report["n_holdout_rows"] = config.holdout == 0.0 ? 0 : test_idx.size();
  report["final_loss"] = trace.loss_trace.empty() ? 0.0 : trace.loss_trace.back();
  report["loss_trace"] = trace.loss_trace;
  report["model"] = model_path;
  std::string report_path = config.report_dir + "/train.json";
  write_json_file(report_path, report);

  Manifest m;
  m.command = "train";
  m.registry_version = matrix.registry_version;
  m.options = {{"matrix", matrix_path}, {"model_out", model_path}};
  m.inputs = {{"matrix", matrix_path}};
  m.extra = {{"task", config.task},
             {"classes", model.class_labels},
             {"n_train_rows", train_idx.size()}};
  write_manifest(config, m);

  out << "train: " << train_idx.size() << " rows, " << model.rounds() << " rounds, final loss "
      << fmt(report["final_loss"].get<double>()) << " -> " << model_path << "\n";
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOpts {
  std::string matrix, model;
};

void cmd_evaluate(const RunConfig& config, const EvaluateOpts& opts, std::ostream& out) {
  std::string matrix_path = default_matrix(config, opts.matrix);
  std::string model_path = default_model(config, opts.model);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  reject_unlabeled(matrix, "evaluate");
  gbdt::Ensemble model = gbdt::load_ensemble(model_path);

  auto [train_idx, test_idx] = holdout_split(config, matrix.labels);
  features::FeatureMatrix eval_matrix = take_rows(matrix, test_idx);
  eval_matrix.labels = mapped_labels(eval_matrix, config.task);

  gbdt::EvalReport eval = gbdt::evaluate(model, eval_matrix);

  json report = report_head(config);
  report["task"] = config.task;
  report["n_rows"] = eval_matrix.rows.size();
  report["class_labels"] = eval.class_labels;
  report["accuracy"] = eval.accuracy;
  report["macro_precision"] = eval.macro_precision;
  report["macro_recall"] = eval.macro_recall;
  report["macro_f1"] = eval.macro_f1;
  report["confusion"] = eval.confusion;
  std::string report_path = config.report_dir + "/evaluate.json";
  write_json_file(report_path, report);

  std::string csv = "truth";
  for (const auto& label : eval.class_labels) csv += "," + label;
  csv += "\n";
  for (std::size_t i = 0; i < eval.class_labels.size(); ++i) {
    csv += eval.class_labels[i];
    for (std::size_t j = 0; j < eval.class_labels.size(); ++j)
      csv += "," + std::to_string(eval.confusion[i][j]);
    csv += "\n";
  }
  write_text(config.report_dir + "/evaluate-confusion.csv", csv);

  Manifest m;
  m.command = "evaluate";
  m.registry_version = model.registry_version;
  m.options = {{"matrix", matrix_path}, {"model", model_path}};
  m.inputs = {{"matrix", matrix_path}, {"model", model_path}};
  m.extra = {{"accuracy", eval.accuracy}, {"macro_f1", eval.macro_f1}};
  write_manifest(config, m);

  out << "evaluate: " << eval_matrix.rows.size() << " rows, accuracy " << fmt(eval.accuracy)
      << "%, macro F1 " << fmt(eval.macro_f1) << "% -> " << report_path << "\n";
}

// ---------------------------------------------------------------------------
// explain
// ---------------------------------------------------------------------------

struct ExplainOpts {
  std::string matrix, model, background;
  std::size_t limit = 0;
};

void cmd_explain(const RunConfig& config, const ExplainOpts& opts, std::ostream& out) {
  std::string matrix_path = default_matrix(config, opts.matrix);
  std::string model_path = default_model(config, opts.model);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  gbdt::Ensemble model = gbdt::load_ensemble(model_path);
  if (matrix.registry_version != model.registry_version)
    throw VersionMismatch("matrix registry " + matrix.registry_version +
                          " does not match model registry " + model.registry_version);

  features::FeatureMatrix background = matrix;
  if (!opts.background.empty()) background = load_matrix(opts.background, false);

  features::FeatureMatrix subset = matrix;
  if (opts.limit > 0 && subset.rows.size() > opts.limit) {
    subset.rows.resize(opts.limit);
    if (!subset.labels.empty()) subset.labels.resize(opts.limit);
  }

  auto attributions = explain::shap_matrix(model, subset, background, config.n_threads);
  explain::GlobalImportance importance =
      explain::global_importance(model, subset, background, config.n_threads);
  std::vector<std::string> ids = features::registry_for_version(model.registry_version).ids();

  std::vector<explain::AttributionResult> flat;
  for (const auto& row : attributions)
    for (const auto& result : row) flat.push_back(result);
  std::string csv_path = config.report_dir + "/explain-attributions.csv";
  ensure_parent(csv_path);
  explain::save_attributions_csv(flat, ids, csv_path);

  json ranking = json::array();
  for (std::size_t index : importance.ranking)
    ranking.push_back({{"feature", ids[index]}, {"mean_abs_phi", importance.mean_abs_phi[index]}});
  json report = report_head(config);
  report["n_rows"] = subset.rows.size();
  report["outputs"] = model.outputs();
  report["ranking"] = ranking;
  std::string report_path = config.report_dir + "/explain.json";
  write_json_file(report_path, report);

  std::vector<svg::Bar> bars;
  for (std::size_t k = 0; k < importance.ranking.size() && k < 10; ++k) {
    std::size_t index = importance.ranking[k];
    bars.push_back({ids[index], importance.mean_abs_phi[index]});
  }
  svg::save(svg::bar_chart("Mean |phi| (top features)", bars, "mean |phi|"),
            config.report_dir + "/explain-importance.svg");

  Manifest m;
  m.command = "explain";
  m.registry_version = model.registry_version;
  m.options = {{"matrix", matrix_path},
               {"model", model_path},
               {"background", opts.background},
               {"limit", opts.limit}};
  m.inputs = {{"matrix", matrix_path}, {"model", model_path}};
  if (!opts.background.empty()) m.inputs.emplace_back("background", opts.background);
  m.extra = {{"n_rows", subset.rows.size()}};
  write_manifest(config, m);

  out << "explain: " << subset.rows.size() << " rows"
      << (ranking.empty() ? "" : ", top feature " + ranking[0]["feature"].get<std::string>())
      << " -> " << report_path << "\n";
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeOpts {
  std::string kind, matrix, model;
  std::vector<std::string> holdout;
};

struct VerdictData {
  std::vector<corpus::Post> posts;    // aligned with matrix rows
  std::vector<double> verdicts;       // P(ai) per row
};

/// Pairs each matrix row with its post and the model's P(ai).
VerdictData verdict_data(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  std::string corpus_path = require_corpus(config);
  std::string matrix_path = default_matrix(config, opts.matrix);
  std::string model_path = default_model(config, opts.model);

  features::FeatureMatrix matrix = load_matrix(matrix_path, true);
  gbdt::Ensemble model = gbdt::load_ensemble(model_path);
  auto ai_slot = std::find(model.class_labels.begin(), model.class_labels.end(), "ai");
  if (model.task != gbdt::Task::Binary || ai_slot == model.class_labels.end())
    throw InvalidArgument("this analysis needs a binary human/ai model; train with --task binary");
  auto ai_index = static_cast<std::size_t>(ai_slot - model.class_labels.begin());

  std::map<std::string, const corpus::Post*> by_id;
  std::vector<corpus::Post> posts = load_posts(corpus_path, "", out);
  for (const auto& post : posts) by_id.emplace(post.id, &post);

  VerdictData data;
  data.posts.reserve(matrix.rows.size());
  data.verdicts.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    auto it = by_id.find(row.post_id);
    if (it == by_id.end())
      throw InvalidArgument("matrix row \"" + row.post_id + "\" is not in corpus " + corpus_path);
    data.posts.push_back(*it->second);
    data.verdicts.push_back(gbdt::predict_proba(model, row.values)[ai_index]);
  }
  return data;
}

void analyze_manifest(const RunConfig& config, const AnalyzeOpts& opts, const json& extra,
                      const std::string& registry_version) {
  Manifest m;
  m.command = "analyze-" + opts.kind;
  m.registry_version = registry_version;
  m.options = {{"kind", opts.kind},
               {"matrix", default_matrix(config, opts.matrix)},
               {"holdout", opts.holdout}};
  m.inputs = {{"matrix", default_matrix(config, opts.matrix)}};
  bool uses_model = opts.kind == "temporal" || opts.kind == "engagement" || opts.kind == "authors";
  if (uses_model) {
    m.options["model"] = default_model(config, opts.model);
    m.options["corpus"] = require_corpus(config);
    m.inputs.emplace_back("model", default_model(config, opts.model));
    m.inputs.emplace_back("corpus", require_corpus(config));
  }
  m.extra = extra;
  write_manifest(config, m);
}

void analyze_temporal(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  VerdictData data = verdict_data(config, opts, out);
  analysis::TemporalSeries series =
      analysis::temporal_trend(data.posts, data.verdicts, config.threshold);

  json report = report_head(config);
  report["threshold"] = config.threshold;
  report.update(analysis::temporal_to_json(series));
  std::string report_path = config.report_dir + "/analyze-temporal.json";
  write_json_file(report_path, report);

  std::string csv = "date,ai_fraction,n_posts\n";
  for (const auto& p : series.daily)
    csv += datetime::format_day(p.day) + "," + fmt(p.ai_fraction) + "," +
           std::to_string(p.n_posts) + "\n";
  write_text(config.report_dir + "/analyze-temporal.csv", csv);

  std::int64_t day0 = series.daily.front().day;
  svg::Series daily{"daily", {}, {}};
  for (const auto& p : series.daily) {
    daily.x.push_back(static_cast<double>(p.day - day0));
    daily.y.push_back(p.ai_fraction);
  }
  auto rolling_series = [day0](const std::vector<analysis::RollingPoint>& points,
                               const std::string& label) {
    svg::Series s{label, {}, {}};
    for (const auto& p : points) {
      s.x.push_back(static_cast<double>(p.day - day0));
      s.y.push_back(p.has_value ? p.value : std::nan(""));
    }
    return s;
  };
  svg::save(svg::line_chart("AI share over time",
                            {daily, rolling_series(series.rolling14, "rolling 14d"),
                             rolling_series(series.rolling30, "rolling 30d")},
                            "days since " + datetime::format_day(day0), "AI fraction"),
            config.report_dir + "/analyze-temporal.svg");

  analyze_manifest(config, opts, {{"ols_slope", series.ols_slope}, {"n_days", series.daily.size()}},
                   features::kRegistryVersion);
  out << "analyze temporal: " << series.daily.size() << " days, OLS slope "
      << fmt(series.ols_slope) << "/day -> " << report_path << "\n";
}

void analyze_engagement(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  VerdictData data = verdict_data(config, opts, out);
  analysis::EngagementSummary summary =
      analysis::engagement_compare(data.posts, data.verdicts, config.threshold);

  json report = report_head(config);
  report["threshold"] = config.threshold;
  report.update(analysis::engagement_to_json(summary));
  std::string report_path = config.report_dir + "/analyze-engagement.json";
  write_json_file(report_path, report);

  std::string csv = "domain,group,count,likes_median,comments_median,collections_median,decline\n";
  std::vector<svg::Box> boxes;
  for (const auto& g : summary.groups) {
    csv += std::string(corpus::domain_name(g.domain)) + "," + g.group + "," +
           std::to_string(g.count) + "," + fmt(g.likes.median) + "," + fmt(g.comments.median) +
           "," + fmt(g.collections.median) + "," + fmt(g.decline) + "\n";
    boxes.push_back({std::string(corpus::domain_name(g.domain)) + "/" + g.group, g.likes.whisker_low,
                     g.likes.q1, g.likes.median, g.likes.q3, g.likes.whisker_high});
  }
  write_text(config.report_dir + "/analyze-engagement.csv", csv);
  svg::save(svg::box_chart("log10(1+likes) by domain and group", boxes, "log10(1+likes)"),
            config.report_dir + "/analyze-engagement.svg");

  analyze_manifest(config, opts, {{"n_groups", summary.groups.size()}},
                   features::kRegistryVersion);
  out << "analyze engagement: " << summary.groups.size() << " groups -> " << report_path << "\n";
}

void analyze_authors(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  VerdictData data = verdict_data(config, opts, out);
  analysis::AuthorTierReport tiers = analysis::author_tiers(
      data.posts, data.verdicts, config.tier_low, config.tier_high, config.threshold);

  json report = report_head(config);
  report["tier_low"] = config.tier_low;
  report["tier_high"] = config.tier_high;
  report.update(analysis::tiers_to_json(tiers));
  std::string report_path = config.report_dir + "/analyze-authors.json";
  write_json_file(report_path, report);

  std::string csv = "author_id,n_posts,ai_ratio,tier\n";
  for (const auto& a : tiers.authors)
    csv += a.author_id + "," + std::to_string(a.n_posts) + "," + fmt(a.ai_ratio) + "," +
           analysis::tier_name(a.tier) + "\n";
  write_text(config.report_dir + "/analyze-authors.csv", csv);

  std::vector<svg::Bar> bars;
  for (std::size_t k = 0; k < 3; ++k)
    bars.push_back({analysis::tier_name(static_cast<analysis::Tier>(k)), tiers.tiers[k].share});
  svg::save(svg::bar_chart("Author tiers", bars, "share of authors"),
            config.report_dir + "/analyze-authors.svg");

  analyze_manifest(config, opts, {{"n_authors", tiers.authors.size()}},
                   features::kRegistryVersion);
  out << "analyze authors: " << tiers.authors.size() << " qualifying authors -> " << report_path
      << "\n";
}

void analyze_correlation(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  std::string matrix_path = default_matrix(config, opts.matrix);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  analysis::CorrelationReport report = analysis::correlation_report(matrix);
  std::vector<std::string> ids = features::registry_for_version(matrix.registry_version).ids();

  json j = report_head(config);
  j.update(analysis::correlation_to_json(report, ids));
  std::string report_path = config.report_dir + "/analyze-correlation.json";
  write_json_file(report_path, j);

  std::string csv = "feature_a,feature_b,r\n";
  for (std::size_t i = 0; i < report.n_features; ++i)
    for (std::size_t k = i + 1; k < report.n_features; ++k)
      csv += ids[i] + "," + ids[k] + "," + fmt(report.at(i, k)) + "\n";
  write_text(config.report_dir + "/analyze-correlation.csv", csv);

  std::vector<svg::Bar> bars;
  for (std::size_t b = 0; b < report.histogram.size(); ++b) {
    char label[16];
    std::snprintf(label, sizeof(label), "%.2f", 0.05 * static_cast<double>(b));
    bars.push_back({label, static_cast<double>(report.histogram[b])});
  }
  svg::save(svg::bar_chart("|r| distribution over feature pairs", bars, "pairs"),
            config.report_dir + "/analyze-correlation.svg");

  analyze_manifest(config, opts,
                   {{"n_pairs", report.n_pairs}, {"mean_abs_r", report.mean_abs_r}},
                   matrix.registry_version);
  out << "analyze correlation: " << report.n_pairs << " pairs, mean |r| "
      << fmt(report.mean_abs_r) << " -> " << report_path << "\n";
}

void analyze_ablation(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  std::string matrix_path = default_matrix(config, opts.matrix);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  analysis::AblationReport report = analysis::ablation_study(matrix, config.train_config());

  json j = report_head(config);
  j.update(analysis::ablation_to_json(report));
  std::string report_path = config.report_dir + "/analyze-ablation.json";
  write_json_file(report_path, j);

  std::string csv = "variant,task,macro_f1\n";
  for (const auto& row : report.rows)
    for (const auto& [task, f1] : row.macro_f1) csv += row.variant + "," + task + "," + fmt(f1) + "\n";
  write_text(config.report_dir + "/analyze-ablation.csv", csv);

  std::string chart_task = std::find(report.tasks.begin(), report.tasks.end(), "binary") !=
                                   report.tasks.end()
                               ? "binary"
                               : report.tasks.front();
  std::vector<svg::Bar> bars;
  for (const auto& row : report.rows) bars.push_back({row.variant, row.macro_f1.at(chart_task)});
  svg::save(svg::bar_chart("Macro F1 by ablated dimension (" + chart_task + ")", bars, "macro F1 %"),
            config.report_dir + "/analyze-ablation.svg");

  analyze_manifest(config, opts, {{"tasks", report.tasks}}, matrix.registry_version);
  out << "analyze ablation: " << report.rows.size() << " variants x " << report.tasks.size()
      << " tasks -> " << report_path << "\n";
}

void analyze_zeroshot(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  if (opts.holdout.empty())
    throw InvalidArgument("zeroshot needs --holdout provider/model (repeatable)");
  std::string matrix_path = default_matrix(config, opts.matrix);
  features::FeatureMatrix matrix = load_matrix(matrix_path, false);
  analysis::ZeroShotResult result =
      analysis::zero_shot_eval(matrix, opts.holdout, config.train_config(), config.split_ratio);

  json j = report_head(config);
  j["holdout_models"] = opts.holdout;
  j.update(analysis::zeroshot_to_json(result));
  std::string report_path = config.report_dir + "/analyze-zeroshot.json";
  write_json_file(report_path, j);

  svg::save(svg::bar_chart("Zero-shot generalization",
                           {{"seen accuracy", result.seen_accuracy},
                            {"unseen recall", result.unseen_recall}},
                           "fraction"),
            config.report_dir + "/analyze-zeroshot.svg");

  analyze_manifest(config, opts,
                   {{"seen_accuracy", result.seen_accuracy},
                    {"unseen_recall", result.unseen_recall}},
                   matrix.registry_version);
  out << "analyze zeroshot: seen accuracy " << fmt(result.seen_accuracy) << ", unseen recall "
      << fmt(result.unseen_recall) << " -> " << report_path << "\n";
}

void cmd_analyze(const RunConfig& config, const AnalyzeOpts& opts, std::ostream& out) {
  if (opts.kind == "temporal") analyze_temporal(config, opts, out);
  else if (opts.kind == "engagement") analyze_engagement(config, opts, out);
  else if (opts.kind == "authors") analyze_authors(config, opts, out);
  else if (opts.kind == "correlation") analyze_correlation(config, opts, out);
  else if (opts.kind == "ablation") analyze_ablation(config, opts, out);
  else if (opts.kind == "zeroshot") analyze_zeroshot(config, opts, out);
  else
    throw InvalidArgument("unknown analysis \"" + opts.kind + "\"");
}

// ---------------------------------------------------------------------------
// summarize
// ---------------------------------------------------------------------------

void cmd_summarize(const RunConfig& config, std::ostream& out) {
  std::string path = require_corpus(config);
  std::vector<corpus::Post> posts = load_posts(path, "", out);

  json report = report_head(config);
  report["n_posts"] = posts.size();
  json domains = json::array();
  std::string csv = "domain,count,mean_length,mean_likes,mean_comments,mean_collections\n";
  for (const auto& row : corpus::summarize(posts)) {
    domains.push_back({{"domain", corpus::domain_name(row.domain)},
                       {"count", row.count},
                       {"mean_length", row.mean_length},
                       {"mean_likes", row.mean_likes},
                       {"mean_comments", row.mean_comments},
                       {"mean_collections", row.mean_collections}});
    csv += std::string(corpus::domain_name(row.domain)) + "," + std::to_string(row.count) + "," +
           fmt(row.mean_length) + "," + fmt(row.mean_likes) + "," + fmt(row.mean_comments) + "," +
           fmt(row.mean_collections) + "\n";
  }
  report["domains"] = domains;
  std::map<std::string, std::size_t> label_counts;
  for (const auto& post : posts) ++label_counts[post.authorship.label()];
  report["labels"] = label_counts;
  corpus::PeriodSplit period = corpus::split_by_period(posts);
  report["pre_llm_posts"] = period.pre_llm.size();
  report["post_llm_posts"] = period.post_llm.size();

  std::string report_path = config.report_dir + "/summarize.json";
  write_json_file(report_path, report);
  write_text(config.report_dir + "/summarize.csv", csv);

  Manifest m;
  m.command = "summarize";
  m.inputs = {{"corpus", path}};
  m.extra = {{"n_posts", posts.size()}};
  write_manifest(config, m);

  out << "summarize: " << posts.size() << " posts -> " << report_path << "\n";
}

// ---------------------------------------------------------------------------
// Argument wiring
// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& c, std::string& config_path) {
  sub->add_option("--config", config_path, "JSON config file (flags override it)");
  sub->add_option("--corpus", c.corpus, "corpus JSONL path");
  sub->add_option("--cache-dir", c.cache_dir, "judge score cache directory");
  sub->add_option("--model-dir", c.model_dir, "model output directory");
  sub->add_option("--report-dir", c.report_dir, "report output directory");
  sub->add_option("--backend", c.backend, "judge backend: mock or remote");
  sub->add_option("--endpoint", c.endpoint, "remote backend base URL");
  sub->add_option("--judge-model", c.judge_model, "remote judge model name");
  sub->add_option("--api-key-env", c.api_key_env, "environment variable holding the API key");
  sub->add_option("--max-in-flight", c.max_in_flight, "max concurrent remote requests");
  sub->add_option("--rpm", c.rpm, "remote requests per minute (0 = unlimited)");
  sub->add_option("--rounds", c.rounds, "boosting rounds");
  sub->add_option("--max-depth", c.max_depth, "tree depth limit");
  sub->add_option("--learning-rate", c.learning_rate, "shrinkage per tree");
  sub->add_option("--min-samples-leaf", c.min_samples_leaf, "minimum rows per leaf");
  sub->add_option("--min-gain", c.min_gain, "minimum split gain");
  sub->add_option("--subsample", c.subsample, "row subsample fraction per round");
  sub->add_option("--holdout-fraction", c.holdout, "held-out fraction for train/evaluate");
  sub->add_option("--task", c.task, "label task: binary, provider or model");
  sub->add_option("--threshold", c.threshold, "AI verdict cutoff on P(ai)");
  sub->add_option("--tier-low", c.tier_low, "Traditional tier upper bound");
  sub->add_option("--tier-high", c.tier_high, "Reliant tier lower bound");
  sub->add_option("--split-ratio", c.split_ratio, "zero-shot seen-class train share");
  sub->add_option("--seed", c.seed, "run seed (recorded in every report)");
  sub->add_option("--threads", c.n_threads, "worker threads");
}

/// --config is honored before the full parse so flags can override file values.
std::string prescan_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

void emit_trailer(std::ostream& err, const std::string& type, const std::string& message) {
  err << "PLAD_ERROR " << json{{"type", type}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    RunConfig config;
    std::string config_path = prescan_config_path(args);
    if (!config_path.empty()) {
      json parsed = json::parse(read_file(config_path), nullptr, false);
      if (parsed.is_discarded()) throw SchemaError("config file " + config_path + " is not valid JSON");
      config = config_from_json(parsed);
    }

    CLI::App app{"psycholinguistic AI-text detection pipeline"};
    app.name("plad");
    app.require_subcommand(1);
    std::string config_path_sink;  // consumed by the prescan; bound for help only

    IngestOpts ingest_opts;
    CLI::App* ingest = app.add_subcommand("ingest", "load and validate a corpus");
    add_common(ingest, config, config_path_sink);
    ingest->add_option("--providers", ingest_opts.providers, "provider registry JSON");
    ingest->add_option("--out", ingest_opts.out, "write accepted posts to this JSONL");

    SynthOpts synth_opts;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    add_common(synth, config, config_path_sink);
    synth->add_option("--fixture", synth_opts.fixture,
                      "default, lexical, providers or exploration")
        ->check(CLI::IsMember({"default", "lexical", "providers", "exploration"}));
    synth->add_option("--count", synth_opts.count, "posts per class (0 = fixture default)");
    synth->add_option("--out", synth_opts.out, "output JSONL (default <report-dir>/corpus.jsonl)");

    ExtractOpts extract_opts;
    CLI::App* extract = app.add_subcommand("extract", "extract the 31-feature matrix");
    add_common(extract, config, config_path_sink);
    extract->add_option("--providers", extract_opts.providers, "provider registry JSON");
    extract->add_option("--out", extract_opts.out,
                        "output CSV (default <report-dir>/matrix.csv; ids sidecar alongside)");
    extract->add_option("--limit", extract_opts.limit, "extract only the first N posts");

    TrainOpts train_opts;
    CLI::App* train = app.add_subcommand("train", "train the boosted-tree classifier");
    add_common(train, config, config_path_sink);
    train->add_option("--matrix", train_opts.matrix, "feature CSV (default <report-dir>/matrix.csv)");
    train->add_option("--model-out", train_opts.model_out,
                      "model path (default <model-dir>/model.json)");

    EvaluateOpts evaluate_opts;
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a model on held-out rows");
    add_common(evaluate, config, config_path_sink);
    evaluate->add_option("--matrix", evaluate_opts.matrix,
                         "feature CSV (default <report-dir>/matrix.csv)");
    evaluate->add_option("--model", evaluate_opts.model, "model path (default <model-dir>/model.json)");

    ExplainOpts explain_opts;
    CLI::App* explain_cmd = app.add_subcommand("explain", "per-prediction Shapley attributions");
    add_common(explain_cmd, config, config_path_sink);
    explain_cmd->add_option("--matrix", explain_opts.matrix,
                            "feature CSV (default <report-dir>/matrix.csv)");
    explain_cmd->add_option("--model", explain_opts.model,
                            "model path (default <model-dir>/model.json)");
    explain_cmd->add_option("--background", explain_opts.background,
                            "background matrix CSV (default: the --matrix rows)");
    explain_cmd->add_option("--limit", explain_opts.limit, "explain only the first N rows");

    AnalyzeOpts analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "corpus-level analyses");
    add_common(analyze, config, config_path_sink);
    analyze
        ->add_option("kind", analyze_opts.kind,
                     "temporal, engagement, authors, correlation, ablation or zeroshot")
        ->required()
        ->check(CLI::IsMember(
            {"temporal", "engagement", "authors", "correlation", "ablation", "zeroshot"}));
    analyze->add_option("--matrix", analyze_opts.matrix,
                        "feature CSV (default <report-dir>/matrix.csv)");
    analyze->add_option("--model", analyze_opts.model, "model path (default <model-dir>/model.json)");
    analyze->add_option("--holdout", analyze_opts.holdout,
                        "zeroshot holdout models, provider/model form")
        ->delimiter(',');

    CLI::App* summarize = app.add_subcommand("summarize", "corpus domain and label summary");
    add_common(summarize, config, config_path_sink);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
      emit_trailer(err, "usage", e.what());
      return 2;
    }

    ensure_dir(config.report_dir);
    if (ingest->parsed()) {
      cmd_ingest(config, ingest_opts, out);
    } else if (synth->parsed()) {
      cmd_synth(config, synth_opts, out);
    } else if (extract->parsed()) {
      cmd_extract(config, extract_opts, out);
    } else if (train->parsed()) {
      cmd_train(config, train_opts, out);
    } else if (evaluate->parsed()) {
      cmd_evaluate(config, evaluate_opts, out);
    } else if (explain_cmd->parsed()) {
      cmd_explain(config, explain_opts, out);
    } else if (analyze->parsed()) {
      cmd_analyze(config, analyze_opts, out);
    } else if (summarize->parsed()) {
      cmd_summarize(config, out);
    }
    return 0;
  } catch (const Error& e) {
    emit_trailer(err, e.type(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_trailer(err, "internal", e.what());
    return 1;
  }
}

}  // namespace plad::cli
