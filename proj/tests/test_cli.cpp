#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "engage/io/jsonl.hpp"
#include "engage/pipeline/pipeline.hpp"

using namespace engage;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("engage_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pipeline::RunConfig tiny_config(const fs::path& dir) {
  pipeline::RunConfig config;
  config.out_dir = dir;
  config.seed = 7;
  config.k = 4;
  config.pass_by_trials = 2;
  config.approach_trials = 2;
  config.cards_trials = 0;
  return config;
}

}  // namespace

TEST_CASE("scenario_frames: approach run carries the labeled partition") {
  const sim::ScenarioScript script = sim::builtin_scenario("approach_interact_leave", 4);
  const auto frames = pipeline::scenario_frames(script, pipeline::sensor_config_for(7, 0),
                                                FeatureManifest::selected32());
  REQUIRE(!frames.empty());
  bool has_want = false, has_interaction = false, has_noone = false;
  for (const auto& f : frames) {
    has_want |= f.label == Label5::WantInteraction;
    has_interaction |= f.label == Label5::Interaction;
    has_noone |= f.label == Label5::NoOne;
  }
  CHECK(has_want);
  CHECK(has_interaction);
  CHECK(has_noone);
}

TEST_CASE("dataset_from_frames") {
  const sim::ScenarioScript script = sim::builtin_scenario("approach_interact_leave", 4);
  const auto frames = pipeline::scenario_frames(script, pipeline::sensor_config_for(7, 0),
                                                FeatureManifest::selected32());
  SUBCASE("five-class keeps every frame") {
    const auto data = pipeline::dataset_from_frames(frames, 5);
    CHECK(data.rows.size() == frames.size());
    CHECK(data.n_features() == 32);
  }
  SUBCASE("three-class drops interaction frames") {
    const auto d5 = pipeline::dataset_from_frames(frames, 5);
    std::size_t interactions = 0;
    for (int l : d5.labels) interactions += l == static_cast<int>(Label5::Interaction);
    REQUIRE(interactions > 0);
    const auto d3 = pipeline::dataset_from_frames(frames, 3);
    CHECK(d3.rows.size() == frames.size() - interactions);
    for (int l : d3.labels) CHECK(l <= 2);
  }
  SUBCASE("spatial condition restricts to the five telemeter columns") {
    const auto cols = FeatureManifest::selected32().spatial_indices();
    const auto data = pipeline::dataset_from_frames(frames, 3, &cols);
    CHECK(data.n_features() == 5);
  }
}

TEST_CASE("fused CSV round-trip preserves frames byte-exactly") {
  const sim::ScenarioScript script = sim::builtin_scenario("pass_by", 2);
  const auto frames = pipeline::scenario_frames(script, pipeline::sensor_config_for(3, 1),
                                                FeatureManifest::selected32());
  const fs::path dir = temp_dir("csv");
  io::write_fused_csv(dir / "a.csv", frames, FeatureManifest::selected32(), "seed=3");
  const io::FusedDataset ds = io::read_fused_csv(dir / "a.csv");
  REQUIRE(ds.frames.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(ds.frames[i].t == frames[i].t);
    CHECK(ds.frames[i].label == frames[i].label);
    CHECK(ds.frames[i].features.values == frames[i].features.values);
  }
  io::write_fused_csv(dir / "b.csv", ds.frames, FeatureManifest::selected32(), "seed=3");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("ranking file round-trip") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  select::MrmrRanking ranking;
  ranking.entries = {{0, 0.9}, {21, 0.5}, {5, 0.25}};
  const fs::path dir = temp_dir("rank");
  pipeline::write_ranking(dir / "r.tsv", ranking, manifest, "seed=1");
  const auto columns = pipeline::read_ranking_columns(dir / "r.tsv", manifest);
  CHECK(columns == std::vector<std::size_t>{0, 21, 5});
}

TEST_CASE("run_pipeline writes deterministic artifacts") {
  const fs::path dir_a = temp_dir("pipe_a");
  const fs::path dir_b = temp_dir("pipe_b");
  pipeline::RunConfig config_a = tiny_config(dir_a);
  pipeline::RunConfig config_b = tiny_config(dir_b);
  const auto out_a = pipeline::run_pipeline(config_a);
  const auto out_b = pipeline::run_pipeline(config_b);

  CHECK(slurp(out_a.fused_csv) == slurp(out_b.fused_csv));
  CHECK(slurp(out_a.ranking_file) == slurp(out_b.ranking_file));
  CHECK(slurp(out_a.model_file) == slurp(out_b.model_file));
  CHECK(slurp(out_a.report_file) == slurp(out_b.report_file));

  // The report carries both conditions and both label spaces.
  const std::string report = slurp(out_a.report_file);
  CHECK(report.find("Multimodal condition (5-class") != std::string::npos);
  CHECK(report.find("Telemeters condition (5-class") != std::string::npos);
  CHECK(report.find("Multimodal condition (3-class") != std::string::npos);
  CHECK(report.find("Telemeters condition (3-class") != std::string::npos);
  CHECK(report.find("config_hash=" + config_a.config_hash()) != std::string::npos);

  // Output files name the seed and the config hash in their headers.
  for (const fs::path& p : {out_a.fused_csv, out_a.ranking_file, out_a.model_file}) {
    std::ifstream in(p);
    std::string first;
    std::getline(in, first);
    CHECK(first.find("seed=7") != std::string::npos);
    CHECK(first.find("config_hash=") != std::string::npos);
  }
}

TEST_CASE("config hash changes with any field") {
  pipeline::RunConfig base = tiny_config("x");
  pipeline::RunConfig other = base;
  other.seed = 8;
  CHECK(base.config_hash() != other.config_hash());
  other = base;
  other.spatial_only = true;
  CHECK(base.config_hash() != other.config_hash());
  other = base;
  other.mrmr_k = 7;
  CHECK(base.config_hash() != other.config_hash());
}

TEST_CASE("mrmr_sweep spans the full feature range") {
  // Small synthetic set: 8 features, 3 classes.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 1.0);
  classify::Dataset data;
  data.n_classes = 3;
  for (int i = 0; i < 240; ++i) {
    const int c = i % 3;
    std::vector<double> row(8);
    for (std::size_t j = 0; j < 8; ++j) {
      row[j] = noise(rng) + (j < 3 && static_cast<int>(j) == c ? 2.0 : 0.0);
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(c);
  }
  const auto ranking = pipeline::rank_dataset(data, 8, select::MrmrScheme::MID);
  classify::CrossValConfig cv;
  cv.k = 4;
  cv.seed = 2;
  const auto rows = pipeline::mrmr_sweep(data, ranking, cv, 2);
  REQUIRE(rows.size() == 7);  // 8 down to 2
  CHECK(rows.front().k_features == 8);
  CHECK(rows.back().k_features == 2);

  // The full-width row equals a direct cross-validation run.
  const auto direct = classify::cross_validate(data, cv);
  CHECK(rows.front().accuracy == doctest::Approx(direct.pooled.accuracy()));
  CHECK(rows.front().want_precision == doctest::Approx(direct.pooled.precision[2]));

  const fs::path dir = temp_dir("sweep");
  pipeline::write_sweep_csv(dir / "sweep.csv", rows, "seed=2");
  std::ifstream in(dir / "sweep.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2 + rows.size());  // comment + header + rows
}

TEST_CASE("cli binary smoke test") {
  const char* cli = std::getenv("ENGAGE_CLI");
  if (cli == nullptr) return;  // only wired up under ctest
  const fs::path dir = temp_dir("cli");
  const std::string base = std::string(cli);

  auto run = [&](const std::string& args) {
    return std::system((base + " " + args + " > /dev/null 2>&1").c_str());
  };

  CHECK(run("simulate --scenario approach_interact_leave --variant 1 --seed 5 --out " +
            (dir / "streams").string()) == 0);
  CHECK(run("track --in " + (dir / "streams").string() + " --out " +
            (dir / "streams/pedestrians.jsonl").string()) == 0);
  CHECK(run("extract --in " + (dir / "streams").string() + " --out-body " +
            (dir / "streams/body.jsonl").string() + " --out-face " +
            (dir / "streams/facefeat.jsonl").string()) == 0);
  CHECK(run("fuse --in " + (dir / "streams").string() + " --out " +
            (dir / "fused.csv").string()) == 0);
  CHECK(run("mrmr --data " + (dir / "fused.csv").string() + " --out " +
            (dir / "ranking.tsv").string()) == 0);
  CHECK(run("train --data " + (dir / "fused.csv").string() + " --out " +
            (dir / "model.txt").string() + " --k 3") == 0);
  CHECK(run("eval --data " + (dir / "fused.csv").string() + " --model " +
            (dir / "model.txt").string()) == 0);

  // A missing script file fails with a nonzero exit code.
  CHECK(run("simulate --script /nonexistent/file.txt --out " + (dir / "x").string()) != 0);

  // The spatial condition trains on exactly five features.
  CHECK(run("train --data " + (dir / "fused.csv").string() + " --features spatial --out " +
            (dir / "model_sp.txt").string()) == 0);
  std::ifstream in(dir / "model_sp.txt");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("d=5") != std::string::npos);
}
