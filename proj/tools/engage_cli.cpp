#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "engage/core/validate.hpp"
#include "engage/io/jsonl.hpp"
#include "engage/pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace engage;

namespace {

struct CommonOpts {
  std::uint64_t seed = 7;
  int manifest = 32;
  int labels = 5;
  std::string features = "multimodal";
  std::string classifier = "svm";
  std::size_t k = 10;
  std::size_t mrmr_k = 0;
  std::string mrmr_scheme = "mid";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "run seed");
  cmd->add_option("--manifest", opts.manifest, "feature manifest edition")
      ->check(CLI::IsMember({32, 99}));
  cmd->add_option("--labels", opts.labels, "label classes")->check(CLI::IsMember({3, 5}));
  cmd->add_option("--features", opts.features, "feature condition")
      ->check(CLI::IsMember({"multimodal", "spatial"}));
  cmd->add_option("--classifier", opts.classifier, "classifier family")
      ->check(CLI::IsMember({"svm", "mlp"}));
  cmd->add_option("--k", opts.k, "cross-validation folds");
  cmd->add_option("--mrmr-k", opts.mrmr_k, "restrict to the top-k ranked features");
  cmd->add_option("--mrmr-scheme", opts.mrmr_scheme, "mrmr criterion")
      ->check(CLI::IsMember({"mid", "miq"}));
}

pipeline::RunConfig to_run_config(const CommonOpts& opts, const fs::path& out_dir) {
  pipeline::RunConfig config;
  config.out_dir = out_dir;
  config.seed = opts.seed;
  config.manifest = opts.manifest == 32 ? Edition::Selected32 : Edition::Full99;
  config.label_classes = opts.labels;
  config.k = opts.k;
  config.classifier = *classify::classifier_from_string(opts.classifier);
  config.mrmr_scheme = *select::mrmr_scheme_from_string(opts.mrmr_scheme);
  config.mrmr_k = opts.mrmr_k;
  config.spatial_only = opts.features == "spatial";
  return config;
}

std::uint64_t file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return pipeline::fnv1a(ss.str());
}

classify::Dataset load_dataset(const fs::path& csv, int labels,
                               const std::vector<std::size_t>* columns) {
  const io::FusedDataset ds = io::read_fused_csv(csv);
  return pipeline::dataset_from_frames(ds.frames, labels, columns);
}

int cmd_simulate(const std::string& scenario, const std::string& script_file,
                 std::uint32_t variant, std::uint64_t seed, const fs::path& out_dir) {
  sim::ScenarioScript script;
  if (!script_file.empty()) {
    std::ifstream in(script_file);
    if (!in) {
      std::cerr << "simulate: cannot open script file " << script_file << "\n";
      return 1;
    }
    script = sim::parse_script(in);
  } else {
    script = sim::builtin_scenario(scenario, variant);
  }
  fs::create_directories(out_dir);
  sim::SensorConfig sensors;
  sensors.seed = seed;
  const sim::SimulationResult res = sim::simulate(script, sensors);

  io::write_laser_jsonl(out_dir / "laser.jsonl", res.laser);
  io::write_scan_geometry(out_dir / "lidar.json", sensors.lidar);
  io::write_skeleton_jsonl(out_dir / "skeleton.jsonl", res.skeletons);
  io::write_face_jsonl(out_dir / "face.jsonl", res.faces);
  io::write_sad_jsonl(out_dir / "sad.jsonl", res.sad);
  io::write_localization_jsonl(out_dir / "localization.jsonl", res.localization);
  io::write_timeline_jsonl(out_dir / "timeline.jsonl", res.timeline);
  {
    std::ofstream sf(out_dir / "script.txt");
    sim::write_script(sf, script);
  }
  for (const char* name : {"laser.jsonl", "skeleton.jsonl", "face.jsonl", "sad.jsonl",
                           "localization.jsonl", "timeline.jsonl"}) {
    std::cout << name << " fnv1a=" << std::hex << file_checksum(out_dir / name) << std::dec
              << '\n';
  }
  return 0;
}

int cmd_track(const fs::path& in_dir, const fs::path& out_file) {
  const auto scans = io::read_laser_jsonl(in_dir / "laser.jsonl");
  laser::TrackerConfig config;
  config.geometry = io::read_scan_geometry(in_dir / "lidar.json");
  const pipeline::TrackedStream tracked = pipeline::track_stream(scans, config);
  io::write_pedestrians_jsonl(out_file, tracked.records, tracked.all_pedestrians);
  std::cout << "tracked ticks with pedestrians: " << tracked.records.size() << '\n';
  return 0;
}

int cmd_extract(const fs::path& in_dir, const fs::path& body_out, const fs::path& face_out) {
  const auto skeletons = io::read_skeleton_jsonl(in_dir / "skeleton.jsonl");
  const auto faces = io::read_face_jsonl(in_dir / "face.jsonl");
  io::write_body_jsonl(body_out, pipeline::extract_body(skeletons));
  io::write_facefeat_jsonl(face_out, pipeline::extract_faces(faces));
  return 0;
}

int cmd_fuse(const fs::path& in_dir, const CommonOpts& opts, const fs::path& out_csv) {
  fusion::FusionInputs inputs;
  inputs.laser = io::read_pedestrians_jsonl(in_dir / "pedestrians.jsonl");
  inputs.body = io::read_body_jsonl(in_dir / "body.jsonl");
  inputs.face = io::read_facefeat_jsonl(in_dir / "facefeat.jsonl");
  inputs.sad = io::read_sad_jsonl(in_dir / "sad.jsonl");
  inputs.localization = io::read_localization_jsonl(in_dir / "localization.jsonl");
  const auto events = io::read_timeline_jsonl(in_dir / "timeline.jsonl");
  const auto timeline = fusion::AnnotationTimeline::from_events(events);

  Timestamp t1 = 0;
  for (const auto& scan : inputs.laser) t1 = std::max(t1, scan.t);
  for (const auto& e : events) t1 = std::max(t1, e.t);
  t1 = (t1 / kTickUs) * kTickUs;
  if (t1 == 0) {
    std::cerr << "fuse: no records to fuse\n";
    return 1;
  }

  const FeatureManifest& manifest =
      FeatureManifest::edition(opts.manifest == 32 ? Edition::Selected32 : Edition::Full99);
  std::vector<SyncedFrame> frames = fusion::fuse(inputs, timeline, manifest, 0, t1);
  if (opts.labels == 3) {
    std::vector<SyncedFrame> filtered;
    for (SyncedFrame& f : frames) {
      const auto l3 = relabel_to_3(f.label);
      if (!l3) continue;
      f.label = static_cast<Label5>(static_cast<int>(*l3));
      filtered.push_back(std::move(f));
    }
    frames = std::move(filtered);
  }
  for (const SyncedFrame& f : frames) {
    const auto violations = validate_frame(f, manifest);
    if (!violations.empty()) {
      std::cerr << "fuse: invariant violation at t=" << f.t << ": " << violations.front()
                << '\n';
      return 1;
    }
  }
  io::write_fused_csv(out_csv, frames, manifest,
                      "seed=" + std::to_string(opts.seed) + " labels=" +
                          std::to_string(opts.labels));
  std::cout << "fused " << frames.size() << " frames\n";
  return 0;
}

int cmd_mrmr(const fs::path& csv, const CommonOpts& opts, const fs::path& out_file) {
  const classify::Dataset data = load_dataset(csv, opts.labels, nullptr);
  const io::FusedDataset ds = io::read_fused_csv(csv);
  const FeatureManifest& manifest = FeatureManifest::edition(ds.edition);
  const std::size_t k = opts.mrmr_k > 0 ? opts.mrmr_k : manifest.size();
  const auto ranking =
      pipeline::rank_dataset(data, k, *select::mrmr_scheme_from_string(opts.mrmr_scheme));
  pipeline::write_ranking(out_file, ranking, manifest,
                          "seed=" + std::to_string(opts.seed) + " scheme=" +
                              opts.mrmr_scheme);
  return 0;
}

int cmd_train(const fs::path& csv, const CommonOpts& opts, const std::string& ranking_file,
              const fs::path& out_model) {
  const io::FusedDataset ds = io::read_fused_csv(csv);
  const FeatureManifest& manifest = FeatureManifest::edition(ds.edition);
  std::vector<std::size_t> columns;
  if (opts.features == "spatial") {
    columns = manifest.spatial_indices();
  } else if (opts.mrmr_k > 0) {
    if (ranking_file.empty()) {
      std::cerr << "train: --mrmr-k needs --ranking\n";
      return 1;
    }
    columns = pipeline::read_ranking_columns(ranking_file, manifest);
    columns.resize(std::min(columns.size(), opts.mrmr_k));
  }
  classify::Dataset data = pipeline::dataset_from_frames(ds.frames, opts.labels,
                                                         columns.empty() ? nullptr : &columns);
  const classify::Standardizer scaler = classify::Standardizer::fit(data);
  data = scaler.apply(data);
  std::ofstream out(out_model);
  out << "# seed=" << opts.seed << " features=" << opts.features << " n="
      << data.rows.size() << " d=" << data.n_features() << '\n';
  if (opts.classifier == "svm") {
    classify::SvmConfig sc;
    sc.seed = opts.seed;
    classify::SvmModel::train(data, sc).save(out);
  } else {
    classify::MlpConfig mc;
    mc.seed = opts.seed;
    classify::MlpModel::train(data, mc).save(out);
  }
  std::cout << "trained " << opts.classifier << " on " << data.rows.size() << " frames, "
            << data.n_features() << " features\n";
  return 0;
}

int cmd_eval(const fs::path& csv, const CommonOpts& opts, const fs::path& model_file,
             const std::string& report_file) {
  const io::FusedDataset ds = io::read_fused_csv(csv);
  const FeatureManifest& manifest = FeatureManifest::edition(ds.edition);
  std::vector<std::size_t> columns;
  if (opts.features == "spatial") columns = manifest.spatial_indices();
  classify::Dataset data = pipeline::dataset_from_frames(ds.frames, opts.labels,
                                                         columns.empty() ? nullptr : &columns);
  const classify::Standardizer scaler = classify::Standardizer::fit(data);
  data = scaler.apply(data);

  std::ifstream in(model_file);
  if (!in) {
    std::cerr << "eval: cannot open model " << model_file << '\n';
    return 1;
  }
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first[0] != '#') {
    in.seekg(0);
  }
  std::vector<int> predicted;
  if (opts.classifier == "svm") {
    const auto model = classify::SvmModel::load(in);
    for (const auto& row : data.rows) predicted.push_back(model.predict(row));
  } else {
    const auto model = classify::MlpModel::load(in);
    for (const auto& row : data.rows) predicted.push_back(model.predict(row));
  }
  const classify::Metrics m = classify::evaluate(data.labels, predicted, data.n_classes);
  std::ostringstream out;
  classify::print_metrics(out, m, pipeline::class_names(opts.labels));
  std::cout << out.str();
  if (!report_file.empty()) {
    std::ofstream rf(report_file);
    rf << "# seed=" << opts.seed << '\n' << out.str();
  }
  return 0;
}

int cmd_sweep(const fs::path& csv, const CommonOpts& opts, const fs::path& out_file) {
  const classify::Dataset data = load_dataset(csv, opts.labels, nullptr);
  const auto ranking = pipeline::rank_dataset(
      data, data.n_features(), *select::mrmr_scheme_from_string(opts.mrmr_scheme));
  classify::CrossValConfig cv;
  cv.k = opts.k;
  cv.seed = opts.seed;
  cv.classifier = *classify::classifier_from_string(opts.classifier);
  cv.svm.seed = opts.seed;
  cv.mlp.seed = opts.seed;
  const int want_class = static_cast<int>(opts.labels == 5 ? Label5::WantInteraction
                                                           : static_cast<Label5>(static_cast<int>(
                                                                 Label3::WantInteraction)));
  const auto rows = pipeline::mrmr_sweep(data, ranking, cv, want_class);
  pipeline::write_sweep_csv(out_file, rows,
                            "seed=" + std::to_string(opts.seed) + " labels=" +
                                std::to_string(opts.labels) + " classifier=" +
                                opts.classifier);
  std::cout << "sweep rows: " << rows.size() << '\n';
  return 0;
}

int cmd_report(const fs::path& csv, const CommonOpts& opts, const std::string& out_file) {
  const io::FusedDataset ds = io::read_fused_csv(csv);
  const FeatureManifest& manifest = FeatureManifest::edition(ds.edition);
  pipeline::RunConfig config = to_run_config(opts, ".");
  const std::string report = pipeline::paired_report(ds.frames, manifest, config);
  std::cout << report;
  if (!out_file.empty()) {
    std::ofstream rf(out_file);
    rf << report;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal starting-engagement detection pipeline"};
  app.require_subcommand(1);

  CommonOpts opts;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "synthesize sensor streams");
  std::string scenario = "approach_interact_leave";
  std::string script_file;
  std::uint32_t variant = 0;
  fs::path sim_out = "run/streams";
  simulate->add_option("--scenario", scenario, "builtin scenario name");
  simulate->add_option("--script", script_file, "scenario script file");
  simulate->add_option("--variant", variant, "builtin scenario variant");
  simulate->add_option("--seed", opts.seed, "sensor noise seed");
  simulate->add_option("--out", sim_out, "output directory");

  // track
  auto* track = app.add_subcommand("track", "lidar pedestrian tracking");
  fs::path track_in = "run/streams";
  fs::path track_out = "run/streams/pedestrians.jsonl";
  track->add_option("--in", track_in, "stream directory");
  track->add_option("--out", track_out, "pedestrian feature output");

  // extract
  auto* extract = app.add_subcommand("extract", "body and face feature extraction");
  fs::path extract_in = "run/streams";
  fs::path body_out = "run/streams/body.jsonl";
  fs::path face_out = "run/streams/facefeat.jsonl";
  extract->add_option("--in", extract_in, "stream directory");
  extract->add_option("--out-body", body_out, "body feature output");
  extract->add_option("--out-face", face_out, "face feature output");

  // fuse
  auto* fuse = app.add_subcommand("fuse", "synchronize, impute and label");
  fs::path fuse_in = "run/streams";
  fs::path fuse_out = "run/fused.csv";
  fuse->add_option("--in", fuse_in, "stream directory");
  fuse->add_option("--out", fuse_out, "fused CSV");
  add_common(fuse, opts);

  // mrmr
  auto* mrmr = app.add_subcommand("mrmr", "rank features");
  fs::path mrmr_data = "run/fused.csv";
  fs::path mrmr_out = "run/ranking.tsv";
  mrmr->add_option("--data", mrmr_data, "fused CSV");
  mrmr->add_option("--out", mrmr_out, "ranking file");
  add_common(mrmr, opts);

  // train
  auto* train = app.add_subcommand("train", "train a classifier");
  fs::path train_data = "run/fused.csv";
  fs::path train_out = "run/model.txt";
  std::string train_ranking;
  train->add_option("--data", train_data, "fused CSV");
  train->add_option("--out", train_out, "model file");
  train->add_option("--ranking", train_ranking, "ranking file for --mrmr-k");
  add_common(train, opts);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a trained model");
  fs::path eval_data = "run/fused.csv";
  fs::path eval_model = "run/model.txt";
  std::string eval_report;
  eval->add_option("--data", eval_data, "fused CSV");
  eval->add_option("--model", eval_model, "model file");
  eval->add_option("--report", eval_report, "report output");
  add_common(eval, opts);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "precision/recall vs feature count");
  fs::path sweep_data = "run/fused.csv";
  fs::path sweep_out = "run/sweep.csv";
  sweep->add_option("--data", sweep_data, "fused CSV");
  sweep->add_option("--out", sweep_out, "sweep table output");
  add_common(sweep, opts);

  // report
  auto* report = app.add_subcommand("report", "paired multimodal/spatial tables");
  fs::path report_data = "run/fused.csv";
  std::string report_out;
  report->add_option("--data", report_data, "fused CSV");
  report->add_option("--out", report_out, "report file");
  add_common(report, opts);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "end-to-end batch run");
  fs::path pipe_out = "run";
  int pass_by_trials = 6;
  int approach_trials = 6;
  int cards_trials = 1;
  pipe->add_option("--out", pipe_out, "run directory");
  pipe->add_option("--pass-by-trials", pass_by_trials, "pass_by scenario count");
  pipe->add_option("--approach-trials", approach_trials, "approach scenario count");
  pipe->add_option("--cards-trials", cards_trials, "cards scenario count");
  add_common(pipe, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(scenario, script_file, variant, opts.seed, sim_out);
    }
    if (track->parsed()) return cmd_track(track_in, track_out);
    if (extract->parsed()) return cmd_extract(extract_in, body_out, face_out);
    if (fuse->parsed()) return cmd_fuse(fuse_in, opts, fuse_out);
    if (mrmr->parsed()) return cmd_mrmr(mrmr_data, opts, mrmr_out);
    if (train->parsed()) return cmd_train(train_data, opts, train_ranking, train_out);
    if (eval->parsed()) return cmd_eval(eval_data, opts, eval_model, eval_report);
    if (sweep->parsed()) return cmd_sweep(sweep_data, opts, sweep_out);
    if (report->parsed()) return cmd_report(report_data, opts, report_out);
    if (pipe->parsed()) {
      pipeline::RunConfig config = to_run_config(opts, pipe_out);
      config.pass_by_trials = pass_by_trials;
      config.approach_trials = approach_trials;
      config.cards_trials = cards_trials;
      const auto outputs = pipeline::run_pipeline(config);
      std::cout << "fused:   " << outputs.fused_csv << "\nranking: " << outputs.ranking_file
                << "\nmodel:   " << outputs.model_file << "\nreport:  "
                << outputs.report_file << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    const std::string stage = app.get_subcommands().empty()
                                  ? "cli"
                                  : app.get_subcommands().front()->get_name();
    std::cerr << stage << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
