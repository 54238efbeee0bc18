#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "engage/classify/crossval.hpp"
#include "engage/classify/dataset.hpp"
#include "engage/classify/standardize.hpp"
#include "engage/core/manifest.hpp"
#include "engage/fusion/synchronize.hpp"
#include "engage/io/fused_csv.hpp"
#include "engage/select/mrmr.hpp"
#include "engage/sim/scenarios.hpp"
#include "engage/sim/simulate.hpp"

namespace engage::pipeline {

struct RunConfig {
  std::filesystem::path out_dir;
  std::uint64_t seed = 7;
  Edition manifest = Edition::Selected32;
  int label_classes = 5;  // 5 or 3
  std::size_t k = 10;
  classify::ClassifierKind classifier = classify::ClassifierKind::Svm;
  select::MrmrScheme mrmr_scheme = select::MrmrScheme::MID;
  std::size_t mrmr_k = 0;  // 0 keeps the full feature set
  bool spatial_only = false;
  int pass_by_trials = 6;
  int approach_trials = 6;
  int cards_trials = 1;

  std::string canonical_string() const;
  std::string config_hash() const;
};

std::uint64_t fnv1a(const std::string& s);

// --- per-stage building blocks (in memory) ---

struct TrackedStream {
  std::vector<fusion::LaserRecord> records;              // nearest pedestrian per tick
  std::vector<laser::PedestrianFeatures> all_pedestrians;
};

TrackedStream track_stream(const std::vector<laser::LaserScan>& scans,
                           const laser::TrackerConfig& config = {});

std::vector<fusion::BodyRecord> extract_body(const std::vector<body::SkeletonFrame>& frames);
std::vector<fusion::FaceFeatureRecord> extract_faces(
    const std::vector<sim::FaceDetection>& faces);

// simulate -> track -> extract -> fuse for one scenario.
std::vector<SyncedFrame> scenario_frames(const sim::ScenarioScript& script,
                                         const sim::SensorConfig& sensors,
                                         const FeatureManifest& manifest);

// The default scenario suite of a run: pass_by/approach/cards variants seeded
// from the run seed; simulations execute in parallel, output order is fixed.
std::vector<SyncedFrame> suite_frames(const RunConfig& config,
                                      const FeatureManifest& manifest);

sim::SensorConfig sensor_config_for(std::uint64_t seed, std::uint32_t scenario_index);

// --- dataset shaping ---

// 5-class labels map one-to-one; 3-class relabeling drops interaction frames.
classify::Dataset dataset_from_frames(const std::vector<SyncedFrame>& frames,
                                      int label_classes,
                                      const std::vector<std::size_t>* columns = nullptr);

std::vector<std::string> class_names(int label_classes);

// --- rankings, reports, sweeps ---

void write_ranking(const std::filesystem::path& path, const select::MrmrRanking& ranking,
                   const FeatureManifest& manifest, const std::string& header_comment);
std::vector<std::size_t> read_ranking_columns(const std::filesystem::path& path,
                                              const FeatureManifest& manifest);

select::MrmrRanking rank_dataset(const classify::Dataset& data, std::size_t k,
                                 select::MrmrScheme scheme);

// Four pooled cross-validation tables: {5,3} classes x {multimodal, spatial}.
std::string paired_report(const std::vector<SyncedFrame>& frames,
                          const FeatureManifest& manifest, const RunConfig& config);

struct SweepRow {
  std::size_t k_features = 0;
  double want_precision = 0.0;
  double want_recall = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double accuracy = 0.0;
};

std::vector<SweepRow> mrmr_sweep(const classify::Dataset& data,
                                 const select::MrmrRanking& ranking,
                                 const classify::CrossValConfig& cv, int want_class);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::string& header_comment);

// --- the end-to-end batch run ---

struct PipelineOutputs {
  std::filesystem::path fused_csv;
  std::filesystem::path ranking_file;
  std::filesystem::path model_file;
  std::filesystem::path report_file;
};

PipelineOutputs run_pipeline(const RunConfig& config);

}  // namespace engage::pipeline
