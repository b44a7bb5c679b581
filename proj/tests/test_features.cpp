#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "plad/corpus.hpp"
#include "plad/error.hpp"
#include "plad/features.hpp"
#include "plad/rubric.hpp"
#include "plad/textstats.hpp"

using namespace plad;
using namespace plad::features;

namespace {

corpus::Post sample_post(std::string id = "p1") {
  corpus::Post p;
  p.id = std::move(id);
  p.title = "海边一日";
  p.content = "嗯，我今天去了海边，我超爱那里的味道！你们懂吗？但是后来下雨了。\n\n"
              "可能明天再去吧，哈哈😊。";
  p.timestamp = 1717200000;
  p.domain = corpus::Domain::Travel;
  p.authorship = corpus::Authorship::human();
  return p;
}

class GarbageBackend : public rubric::ChatBackend {
 public:
  std::string id() const override { return "garbage"; }
  std::string complete(const std::string&, double, std::uint64_t) override { return "???"; }
};

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("default registry: 31 contiguous entries, 8/7/9/7, 18 rubric + 13 stats") {
  const Registry& reg = default_registry();
  REQUIRE(reg.size() == 31);
  CHECK_NOTHROW(validate_registry(reg));

  std::map<Dimension, int> tally;
  int rubric_n = 0, stat_n = 0;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < reg.entries.size(); ++i) {
    const RegistryEntry& e = reg.entries[i];
    CHECK(e.index == static_cast<int>(i));
    ids.insert(e.id);
    ++tally[e.dimension];
    (e.source == Source::Rubric ? rubric_n : stat_n)++;
  }
  CHECK(ids.size() == 31);
  CHECK(tally[Dimension::Emotional] == 8);
  CHECK(tally[Dimension::Cognitive] == 7);
  CHECK(tally[Dimension::Lexical] == 9);
  CHECK(tally[Dimension::Cohesion] == 7);
  CHECK(rubric_n == 18);
  CHECK(stat_n == 13);

  // C(31,2) pairings downstream
  CHECK(31 * 30 / 2 == 465);

  // rubric-sourced entries appear in rubric-set order
  std::vector<std::string> rubric_ids;
  for (const RegistryEntry& e : reg.entries)
    if (e.source == Source::Rubric) rubric_ids.push_back(e.id);
  const auto& criteria = rubric::default_rubric_set();
  REQUIRE(rubric_ids.size() == criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i) CHECK(rubric_ids[i] == criteria[i].id);
}

TEST_CASE("registry JSON round trip and validation") {
  auto path = temp_path("plad_test_registry_file.json");
  save_registry(default_registry(), path.string());
  Registry loaded = load_registry(path.string());
  CHECK(loaded.version == kRegistryVersion);
  REQUIRE(loaded.size() == 31);
  for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
    CHECK(loaded.entries[i].id == default_registry().entries[i].id);
    CHECK(loaded.entries[i].dimension == default_registry().entries[i].dimension);
    CHECK(loaded.entries[i].source == default_registry().entries[i].source);
  }
  std::filesystem::remove(path);

  Registry dup = default_registry();
  dup.entries[1].id = dup.entries[0].id;
  CHECK_THROWS_AS(validate_registry(dup), SchemaError);

  Registry holey = default_registry();
  holey.entries[3].index = 99;
  CHECK_THROWS_AS(validate_registry(holey), SchemaError);
}

TEST_CASE("ablated registries renumber, suffix the version, and resolve back") {
  const std::array<std::pair<Dimension, std::size_t>, 4> expect = {{
      {Dimension::Emotional, 23},
      {Dimension::Cognitive, 24},
      {Dimension::Lexical, 22},
      {Dimension::Cohesion, 24},
  }};
  for (const auto& [dim, width] : expect) {
    Registry reg = ablated_registry(default_registry(), {dim});
    CHECK(reg.size() == width);
    CHECK(reg.version == std::string(kRegistryVersion) + "-wo" + rubric::dimension_name(dim));
    for (std::size_t i = 0; i < reg.entries.size(); ++i)
      CHECK(reg.entries[i].index == static_cast<int>(i));

    Registry resolved = registry_for_version(reg.version);
    CHECK(resolved.ids() == reg.ids());
  }

  Registry two = ablated_registry(default_registry(), {Dimension::Lexical, Dimension::Emotional});
  CHECK(two.size() == 31 - 9 - 8);
  CHECK(two.version == std::string(kRegistryVersion) + "-woEmotional-woLexical");
  CHECK(registry_for_version(two.version).ids() == two.ids());

  CHECK_THROWS_AS(registry_for_version("plad-features-v0"), VersionMismatch);
  CHECK_THROWS_AS(registry_for_version(std::string(kRegistryVersion) + "-woTopics"),
                  VersionMismatch);
}

TEST_CASE("extract produces the full 31-slot vector in registry order") {
  rubric::MockBackend mock;
  auto rubric_set = rubric::default_rubric();
  corpus::Post post = sample_post();

  FeatureVector vec = extract(post, rubric_set, mock, nullptr, {.seed = 42});
  REQUIRE(vec.values.size() == 31);
  CHECK(vec.post_id == "p1");

  // statistical slots equal textstats on the title+content concatenation
  auto stats = textstats::stat_features(post.title + "\n\n" + post.content);
  const Registry& reg = default_registry();
  CHECK(vec.values[*reg.index_of("type_token_ratio")] ==
        doctest::Approx(stats.type_token_ratio));
  CHECK(vec.values[*reg.index_of("sentence_burstiness")] ==
        doctest::Approx(stats.sentence_burstiness));
  CHECK(vec.values[*reg.index_of("emoji_density")] == doctest::Approx(stats.emoji_density));
  CHECK(vec.values[*reg.index_of("punctuation_diversity")] ==
        doctest::Approx(stats.punctuation_diversity));

  // rubric-sourced slots stay normalized
  for (const RegistryEntry& e : reg.entries) {
    if (e.source == Source::Rubric) {
      double v = vec.values[static_cast<std::size_t>(e.index)];
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }

  // determinism
  FeatureVector again = extract(post, rubric_set, mock, nullptr, {.seed = 42});
  CHECK(again.values == vec.values);
}

TEST_CASE("emoji-free post has zero emoji slots") {
  rubric::MockBackend mock;
  corpus::Post post = sample_post("plain");
  post.title = "";
  post.content = "今天天气不错。出去走了走。";
  FeatureVector vec = extract(post, rubric::default_rubric(), mock);
  const Registry& reg = default_registry();
  CHECK(vec.values[*reg.index_of("emoji_density")] == doctest::Approx(0.0));
  CHECK(vec.values[*reg.index_of("emoji_position_entropy")] == doctest::Approx(0.0));
}

TEST_CASE("scoring failure carries the post id; no partial vector") {
  GarbageBackend garbage;
  corpus::Post post = sample_post("post-xyz");
  try {
    extract(post, rubric::default_rubric(), garbage);
    FAIL("expected ScoringFailed");
  } catch (const ScoringFailed& e) {
    CHECK(std::string(e.what()).find("post-xyz") != std::string::npos);
  }

  corpus::Post blank = sample_post("blank");
  blank.content = "  ";
  rubric::MockBackend mock;
  CHECK_THROWS_AS(extract(blank, rubric::default_rubric(), mock), InvalidArgument);
}

TEST_CASE("extract_matrix fills rows and labels; thread count changes nothing") {
  auto posts = corpus::synthesize_corpus(corpus::default_fixture(12, 12), 5);
  rubric::MockBackend mock;
  auto rubric_set = rubric::default_rubric();

  ExtractConfig serial;
  serial.score.seed = 7;
  serial.n_threads = 1;
  FeatureMatrix a = extract_matrix(posts, rubric_set, mock, nullptr, serial);

  ExtractConfig threaded = serial;
  threaded.n_threads = 4;
  FeatureMatrix b = extract_matrix(posts, rubric_set, mock, nullptr, threaded);

  REQUIRE(a.rows.size() == posts.size());
  REQUIRE(a.labels.size() == posts.size());
  CHECK(a.registry_version == kRegistryVersion);
  for (std::size_t i = 0; i < posts.size(); ++i) {
    CHECK(a.rows[i].post_id == posts[i].id);
    CHECK(a.labels[i] == posts[i].authorship.label());
    CHECK(a.rows[i].values == b.rows[i].values);
  }
}

TEST_CASE("ablate drops a dimension's columns and suffixes the version") {
  auto posts = corpus::synthesize_corpus(corpus::default_fixture(4, 4), 2);
  rubric::MockBackend mock;
  FeatureMatrix full = extract_matrix(posts, rubric::default_rubric(), mock);
  REQUIRE(full.width() == 31);

  FeatureMatrix no_lex = ablate(full, Dimension::Lexical);
  CHECK(no_lex.width() == 22);
  CHECK(no_lex.registry_version == std::string(kRegistryVersion) + "-woLexical");
  CHECK(no_lex.rows.size() == full.rows.size());
  CHECK(no_lex.labels == full.labels);

  FeatureMatrix no_cog = ablate(full, Dimension::Cognitive);
  CHECK(no_cog.width() == 24);

  // sequential ablation is additive for disjoint dimensions
  FeatureMatrix both = ablate(no_lex, Dimension::Emotional);
  CHECK(both.width() == 31 - 9 - 8);
  CHECK(both.registry_version == std::string(kRegistryVersion) + "-woEmotional-woLexical");

  // dropped columns are gone, kept columns carry their original values
  Registry slim = registry_for_version(no_lex.registry_version);
  const Registry& reg = default_registry();
  for (const RegistryEntry& e : slim.entries) {
    auto src = reg.index_of(e.id);
    REQUIRE(src.has_value());
    CHECK(no_lex.rows[0].values[static_cast<std::size_t>(e.index)] ==
          doctest::Approx(full.rows[0].values[*src]));
  }
}

TEST_CASE("matrix CSV round trip: 32 columns, 12 significant digits") {
  auto posts = corpus::synthesize_corpus(corpus::default_fixture(50, 50), 3);
  rubric::MockBackend mock;
  FeatureMatrix m = extract_matrix(posts, rubric::default_rubric(), mock);

  auto path = temp_path("plad_test_matrix.csv");
  save_matrix_csv(m, path.string());

  // shape: header + 100 rows, 32 fields each
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 31);
  }
  CHECK(lines == 101);

  FeatureMatrix back = load_matrix_csv(path.string());
  CHECK(back.registry_version == m.registry_version);
  REQUIRE(back.rows.size() == m.rows.size());
  CHECK(back.labels == m.labels);
  CHECK(back.rows[0].post_id == "row0");
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (std::size_t c = 0; c < 31; ++c)
      CHECK(back.rows[r].values[c] ==
            doctest::Approx(m.rows[r].values[c]).epsilon(1e-11));
  std::filesystem::remove(path);
}

TEST_CASE("ablated matrices survive the CSV round trip with their version") {
  auto posts = corpus::synthesize_corpus(corpus::default_fixture(5, 5), 4);
  rubric::MockBackend mock;
  FeatureMatrix m = ablate(extract_matrix(posts, rubric::default_rubric(), mock),
                           Dimension::Cohesion);
  auto path = temp_path("plad_test_matrix_ablated.csv");
  save_matrix_csv(m, path.string());
  FeatureMatrix back = load_matrix_csv(path.string());
  CHECK(back.registry_version == std::string(kRegistryVersion) + "-woCohesion");
  CHECK(back.width() == 24);
  std::filesystem::remove(path);
}

TEST_CASE("CSV loading rejects unknown, partial, and reordered columns") {
  auto path = temp_path("plad_test_matrix_bad.csv");

  std::ofstream(path) << "no_such_feature,label\n1.0,human\n";
  try {
    load_matrix_csv(path.string());
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("no_such_feature") != std::string::npos);
  }

  // a lone column from a dimension is a partial cover
  std::ofstream(path) << "emotional_intensity,label\n0.5,human\n";
  CHECK_THROWS_AS(load_matrix_csv(path.string()), SchemaError);

  // full roster but shuffled order
  {
    std::vector<std::string> ids = default_registry().ids();
    std::swap(ids[0], ids[1]);
    std::ofstream out(path);
    for (const auto& id : ids) out << id << ',';
    out << "label\n";
    for (std::size_t i = 0; i < ids.size(); ++i) out << "0,";
    out << "human\n";
  }
  CHECK_THROWS_AS(load_matrix_csv(path.string()), SchemaError);

  // non-numeric value
  {
    std::ofstream out(path);
    for (const auto& id : default_registry().ids()) out << id << ',';
    out << "label\n";
    for (int i = 0; i < 31; ++i) out << (i == 5 ? "abc," : "0,");
    out << "human\n";
  }
  CHECK_THROWS_AS(load_matrix_csv(path.string()), SchemaError);

  std::filesystem::remove(path);
}

TEST_CASE("cached extraction repeats the exact vector") {
  auto dir = temp_path("plad_test_feature_cache");
  std::filesystem::remove_all(dir);
  rubric::ScoreCache cache(dir.string());
  rubric::MockBackend mock;
  corpus::Post post = sample_post();

  rubric::ScoreStats s1, s2;
  FeatureVector a = extract(post, rubric::default_rubric(), mock, &cache, {.seed = 9}, &s1);
  FeatureVector b = extract(post, rubric::default_rubric(), mock, &cache, {.seed = 9}, &s2);
  CHECK(a.values == b.values);
  CHECK(s1.backend_calls > 0);
  CHECK(s2.backend_calls == 0);
  CHECK(s2.cache_hits == 1);
  std::filesystem::remove_all(dir);
}
