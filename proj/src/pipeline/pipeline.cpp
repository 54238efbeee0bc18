#include "engage/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "engage/core/validate.hpp"
#include "engage/io/jsonl.hpp"

namespace engage::pipeline {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string RunConfig::canonical_string() const {
  std::ostringstream os;
  os << "seed=" << seed << ";manifest=" << (manifest == Edition::Selected32 ? 32 : 99)
     << ";labels=" << label_classes << ";k=" << k
     << ";classifier=" << classify::to_string(classifier)
     << ";mrmr=" << select::to_string(mrmr_scheme) << ";mrmr_k=" << mrmr_k
     << ";features=" << (spatial_only ? "spatial" : "multimodal")
     << ";trials=" << pass_by_trials << "," << approach_trials << "," << cards_trials;
  return os.str();
}

std::string RunConfig::config_hash() const {
  std::ostringstream os;
  os << std::hex << fnv1a(canonical_string());
  return os.str();
}

TrackedStream track_stream(const std::vector<laser::LaserScan>& scans,
                           const laser::TrackerConfig& config) {
  laser::LaserTracker tracker(config);
  TrackedStream out;
  for (const laser::LaserScan& scan : scans) {
    laser::TrackOutput res = tracker.track_scan(scan);
    if (res.pedestrians.empty()) continue;
    out.all_pedestrians.insert(out.all_pedestrians.end(), res.pedestrians.begin(),
                               res.pedestrians.end());
    const laser::PedestrianFeatures* best = &res.pedestrians.front();
    for (const auto& p : res.pedestrians) {
      if (p.cible_dist < best->cible_dist) best = &p;
    }
    out.records.push_back({scan.t, *best, static_cast<int>(res.n_pedestrians)});
  }
  return out;
}

std::vector<fusion::BodyRecord> extract_body(const std::vector<body::SkeletonFrame>& frames) {
  std::vector<fusion::BodyRecord> out;
  std::size_t i = 0;
  while (i < frames.size()) {
    std::size_t j = i;
    while (j < frames.size() && frames[j].t == frames[i].t) ++j;
    // Closest skeleton wins the single body slot of the tick.
    const body::SkeletonFrame* best = nullptr;
    double best_dist = 0.0;
    for (std::size_t s = i; s < j; ++s) {
      const auto dist = body::skeleton_distance(frames[s]);
      if (!dist) continue;
      if (best == nullptr || *dist < best_dist) {
        best = &frames[s];
        best_dist = *dist;
      }
    }
    if (best == nullptr) best = &frames[i];
    fusion::BodyRecord rec;
    rec.t = best->t;
    rec.skeleton_id = best->skeleton_id;
    rec.count = static_cast<int>(j - i);
    rec.metrics = body::schegloff_metrics(*best);
    rec.skl_dist = body::skeleton_distance(*best);
    rec.has_joints = true;
    rec.joints = best->joints;
    out.push_back(std::move(rec));
    i = j;
  }
  return out;
}

std::vector<fusion::FaceFeatureRecord> extract_faces(
    const std::vector<sim::FaceDetection>& faces) {
  std::vector<fusion::FaceFeatureRecord> out;
  std::size_t i = 0;
  while (i < faces.size()) {
    std::size_t j = i;
    std::vector<body::FaceBox> boxes;
    while (j < faces.size() && faces[j].t == faces[i].t) {
      boxes.push_back(faces[j].box);
      ++j;
    }
    const auto feat =
        body::select_face(boxes, faces[i].image_width, faces[i].image_height);
    if (feat) {
      out.push_back({faces[i].t, *feat, static_cast<int>(boxes.size())});
    }
    i = j;
  }
  return out;
}

std::vector<SyncedFrame> scenario_frames(const sim::ScenarioScript& script,
                                         const sim::SensorConfig& sensors,
                                         const FeatureManifest& manifest) {
  const sim::SimulationResult sim = sim::simulate(script, sensors);
  fusion::FusionInputs inputs;
  laser::TrackerConfig tracker_config;
  tracker_config.geometry = sensors.lidar;
  TrackedStream tracked = track_stream(sim.laser, tracker_config);
  inputs.laser = std::move(tracked.records);
  inputs.body = extract_body(sim.skeletons);
  inputs.face = extract_faces(sim.faces);
  inputs.sad = sim.sad;
  inputs.localization = sim.localization;
  const auto timeline = fusion::AnnotationTimeline::from_events(sim.timeline);
  return fusion::fuse(inputs, timeline, manifest, sim.t0, sim.t1);
}

sim::SensorConfig sensor_config_for(std::uint64_t seed, std::uint32_t scenario_index) {
  sim::SensorConfig config;
  config.seed = fnv1a(std::to_string(seed) + "/" + std::to_string(scenario_index));
  return config;
}

std::vector<SyncedFrame> suite_frames(const RunConfig& config,
                                      const FeatureManifest& manifest) {
  struct Job {
    std::string name;
    std::uint32_t variant;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < config.pass_by_trials; ++i) {
    jobs.push_back({"pass_by", static_cast<std::uint32_t>(config.seed * 100 + i)});
  }
  for (int i = 0; i < config.approach_trials; ++i) {
    jobs.push_back(
        {"approach_interact_leave", static_cast<std::uint32_t>(config.seed * 100 + i)});
  }
  for (int i = 0; i < config.cards_trials; ++i) {
    jobs.push_back({"cards_multiuser", static_cast<std::uint32_t>(config.seed * 100 + i)});
  }

  std::vector<std::vector<SyncedFrame>> per_job(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const sim::ScenarioScript script = sim::builtin_scenario(jobs[i].name, jobs[i].variant);
    per_job[i] = scenario_frames(
        script, sensor_config_for(config.seed, static_cast<std::uint32_t>(i)), manifest);
  }

  std::vector<SyncedFrame> frames;
  for (auto& chunk : per_job) {
    frames.insert(frames.end(), std::make_move_iterator(chunk.begin()),
                  std::make_move_iterator(chunk.end()));
  }
  return frames;
}

classify::Dataset dataset_from_frames(const std::vector<SyncedFrame>& frames,
                                      int label_classes,
                                      const std::vector<std::size_t>* columns) {
  if (label_classes != 3 && label_classes != 5) {
    throw std::invalid_argument("label_classes must be 3 or 5");
  }
  classify::Dataset data;
  data.n_classes = static_cast<std::size_t>(label_classes);
  for (const SyncedFrame& frame : frames) {
    int label;
    if (label_classes == 5) {
      label = static_cast<int>(frame.label);
    } else {
      const auto l3 = relabel_to_3(frame.label);
      if (!l3) continue;  // interaction frames are removed
      label = static_cast<int>(*l3);
    }
    if (columns != nullptr) {
      std::vector<double> row;
      row.reserve(columns->size());
      for (std::size_t c : *columns) row.push_back(frame.features.values.at(c));
      data.rows.push_back(std::move(row));
    } else {
      data.rows.push_back(frame.features.values);
    }
    data.labels.push_back(label);
  }
  return data;
}

std::vector<std::string> class_names(int label_classes) {
  if (label_classes == 5) {
    return {to_string(Label5::NoOne), to_string(Label5::Someone),
            to_string(Label5::WantInteraction), to_string(Label5::Interaction),
            to_string(Label5::LeaveInteraction)};
  }
  return {to_string(Label3::NoOne), to_string(Label3::Someone),
          to_string(Label3::WantInteraction)};
}

void write_ranking(const std::filesystem::path& path, const select::MrmrRanking& ranking,
                   const FeatureManifest& manifest, const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    const select::MrmrEntry& e = ranking.entries[i];
    out << (i + 1) << '\t' << manifest.at(e.feature).id << '\t'
        << io::format_double(e.score) << '\n';
  }
}

std::vector<std::size_t> read_ranking_columns(const std::filesystem::path& path,
                                              const FeatureManifest& manifest) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::size_t> columns;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t rank = 0;
    std::string id;
    double score = 0.0;
    if (!(ls >> rank >> id >> score)) {
      throw std::runtime_error(path.string() + ": malformed ranking line: " + line);
    }
    const auto idx = manifest.index_of(id);
    if (!idx) throw std::runtime_error(path.string() + ": unknown feature " + id);
    columns.push_back(*idx);
  }
  return columns;
}

select::MrmrRanking rank_dataset(const classify::Dataset& data, std::size_t k,
                                 select::MrmrScheme scheme) {
  const select::DiscretizedMatrix matrix =
      select::discretize_matrix(data.rows, data.n_features());
  std::vector<std::uint8_t> labels;
  labels.reserve(data.labels.size());
  for (int l : data.labels) labels.push_back(static_cast<std::uint8_t>(l));
  return select::mrmr_rank(matrix, labels, k, scheme);
}

namespace {

void report_condition(std::ostream& out, const std::vector<SyncedFrame>& frames,
                      const FeatureManifest& manifest, const RunConfig& config,
                      int label_classes, bool spatial) {
  const std::vector<std::size_t> spatial_cols = manifest.spatial_indices();
  classify::Dataset data =
      dataset_from_frames(frames, label_classes, spatial ? &spatial_cols : nullptr);
  classify::CrossValConfig cv;
  cv.k = config.k;
  cv.seed = config.seed;
  cv.classifier = config.classifier;
  cv.svm.seed = config.seed;
  cv.mlp.seed = config.seed;
  const classify::CrossValResult res = classify::cross_validate(data, cv);

  out << (spatial ? "Telemeters condition" : "Multimodal condition") << " ("
      << label_classes << "-class, " << data.rows.size() << " frames, train "
      << res.plan.train_size() << " / test " << res.plan.test_size() << " / aside "
      << res.plan.aside_size() << ")\n";
  classify::print_metrics(out, res.pooled, class_names(label_classes));
  out << '\n';
}

}  // namespace

std::string paired_report(const std::vector<SyncedFrame>& frames,
                          const FeatureManifest& manifest, const RunConfig& config) {
  std::ostringstream out;
  out << "# seed=" << config.seed << " config_hash=" << config.config_hash() << '\n';
  out << "# classifier: " << classify::to_string(config.classifier);
  if (config.classifier == classify::ClassifierKind::Svm) {
    out << " (linear one-vs-rest, hinge loss, lambda=1e-4, 20 epochs; kernel models out"
           " of scope)";
  } else {
    out << " (1 hidden sigmoid layer, softmax output, lr=0.3, momentum=0.2, 500 epochs)";
  }
  out << "\n# stratified " << config.k << "-fold cross validation, pooled test folds\n\n";
  for (int classes : {5, 3}) {
    report_condition(out, frames, manifest, config, classes, false);
    report_condition(out, frames, manifest, config, classes, true);
  }
  return out.str();
}

std::vector<SweepRow> mrmr_sweep(const classify::Dataset& data,
                                 const select::MrmrRanking& ranking,
                                 const classify::CrossValConfig& cv, int want_class) {
  std::vector<SweepRow> rows;
  for (std::size_t k = ranking.entries.size(); k >= 2; --k) {
    std::vector<std::size_t> columns;
    for (std::size_t i = 0; i < k; ++i) columns.push_back(ranking.entries[i].feature);
    classify::Dataset reduced;
    reduced.labels = data.labels;
    reduced.n_classes = data.n_classes;
    reduced.rows.reserve(data.rows.size());
    for (const auto& row : data.rows) {
      std::vector<double> r;
      r.reserve(columns.size());
      for (std::size_t c : columns) r.push_back(row[c]);
      reduced.rows.push_back(std::move(r));
    }
    const classify::CrossValResult res = classify::cross_validate(reduced, cv);
    SweepRow row;
    row.k_features = k;
    row.want_precision = res.pooled.precision.at(static_cast<std::size_t>(want_class));
    row.want_recall = res.pooled.recall.at(static_cast<std::size_t>(want_class));
    row.macro_precision = res.pooled.macro_precision();
    row.macro_recall = res.pooled.macro_recall();
    row.accuracy = res.pooled.accuracy();
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "k,want_precision,want_recall,macro_precision,macro_recall,accuracy\n";
  for (const SweepRow& r : rows) {
    out << r.k_features << ',' << io::format_double(r.want_precision) << ','
        << io::format_double(r.want_recall) << ',' << io::format_double(r.macro_precision)
        << ',' << io::format_double(r.macro_recall) << ',' << io::format_double(r.accuracy)
        << '\n';
  }
}

PipelineOutputs run_pipeline(const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const FeatureManifest& manifest = FeatureManifest::edition(config.manifest);
  const std::string header = "seed=" + std::to_string(config.seed) +
                             " config_hash=" + config.config_hash();

  const std::vector<SyncedFrame> frames = suite_frames(config, manifest);
  PipelineOutputs outputs;
  outputs.fused_csv = config.out_dir / "fused.csv";
  io::write_fused_csv(outputs.fused_csv, frames, manifest, header);

  {
    std::ofstream mf(config.out_dir / "manifest.tsv");
    mf << "# " << header << '\n';
    manifest.serialize(mf);
  }

  // Ranking over the configured label space.
  classify::Dataset full = dataset_from_frames(frames, config.label_classes);
  const select::MrmrRanking ranking =
      rank_dataset(full, manifest.size(), config.mrmr_scheme);
  outputs.ranking_file = config.out_dir / "ranking.tsv";
  write_ranking(outputs.ranking_file, ranking, manifest, header);

  // Model trained on the configured condition.
  const std::vector<std::size_t> spatial_cols = manifest.spatial_indices();
  std::vector<std::size_t> model_cols;
  if (config.spatial_only) {
    model_cols = spatial_cols;
  } else if (config.mrmr_k > 0) {
    for (std::size_t i = 0; i < config.mrmr_k && i < ranking.entries.size(); ++i) {
      model_cols.push_back(ranking.entries[i].feature);
    }
  }
  classify::Dataset train_data = dataset_from_frames(
      frames, config.label_classes, model_cols.empty() ? nullptr : &model_cols);
  const classify::Standardizer scaler = classify::Standardizer::fit(train_data);
  train_data = scaler.apply(train_data);

  outputs.model_file = config.out_dir / "model.txt";
  {
    std::ofstream mf(outputs.model_file);
    mf << "# " << header << '\n';
    if (config.classifier == classify::ClassifierKind::Svm) {
      classify::SvmConfig sc;
      sc.seed = config.seed;
      classify::SvmModel::train(train_data, sc).save(mf);
    } else {
      classify::MlpConfig mc;
      mc.seed = config.seed;
      classify::MlpModel::train(train_data, mc).save(mf);
    }
  }

  outputs.report_file = config.out_dir / "report.txt";
  {
    std::ofstream rf(outputs.report_file);
    rf << paired_report(frames, manifest, config);
  }
  return outputs;
}

}  // namespace engage::pipeline
