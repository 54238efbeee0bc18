#pragma once

#include <array>
#include <optional>
#include <vector>

#include "engage/acoustic/acoustic.hpp"
#include "engage/body/face.hpp"
#include "engage/body/schegloff.hpp"
#include "engage/core/manifest.hpp"
#include "engage/core/types.hpp"
#include "engage/fusion/timeline.hpp"
#include "engage/laser/tracker.hpp"

namespace engage::fusion {

// Per-tick channel records feeding the synchronizer. Laser and body records
// carry the winning pedestrian/skeleton of their tick plus stream counters.
struct LaserRecord {
  Timestamp t = 0;
  laser::PedestrianFeatures best;
  int count = 0;
};

struct BodyRecord {
  Timestamp t = 0;
  int skeleton_id = 0;
  body::SchegloffMetrics metrics;
  std::optional<double> skl_dist;
  int count = 0;
  bool has_joints = false;
  std::array<body::JointSample, body::kJointCount> joints{};
};

struct FaceFeatureRecord {
  Timestamp t = 0;
  body::FaceFeatures features;
  int count = 0;
};

struct FusionInputs {
  std::vector<LaserRecord> laser;
  std::vector<BodyRecord> body;
  std::vector<FaceFeatureRecord> face;
  std::vector<acoustic::SadTag> sad;
  std::vector<acoustic::SourceLocalization> localization;
};

struct SyncConfig {
  Timestamp laser_staleness = 160'000;     // two scan periods
  Timestamp skeleton_staleness = 200'000;  // six nominal depth periods
  Timestamp face_staleness = 200'000;
  acoustic::AcousticConfig acoustic;
};

// A frame before neutral imputation: absent features hold NaN and are flagged
// in the per-feature mask.
struct RawFrame {
  Timestamp t = 0;
  std::vector<double> values;
  std::vector<bool> feature_present;
  std::array<bool, kChannelCount> channel_present{};
};

// One frame per 80 ms tick over (t0, t1]; each feature takes the channel's
// most recent admissible value (last-value hold with per-channel expiry).
// Throws on non-monotone channel timestamps.
std::vector<RawFrame> synchronize(const FusionInputs& inputs,
                                  const FeatureManifest& manifest, Timestamp t0,
                                  Timestamp t1, const SyncConfig& config = {});

// Replaces masked-absent features by their manifest neutral; the channel mask
// is preserved for diagnostics.
FeatureVector impute_neutral(const RawFrame& frame, const FeatureManifest& manifest);

// Attaches timeline labels to imputed frames.
std::vector<SyncedFrame> label_from_timeline(const AnnotationTimeline& timeline,
                                             const std::vector<RawFrame>& frames,
                                             const FeatureManifest& manifest);

// synchronize + impute + label in one pass.
std::vector<SyncedFrame> fuse(const FusionInputs& inputs, const AnnotationTimeline& timeline,
                              const FeatureManifest& manifest, Timestamp t0, Timestamp t1,
                              const SyncConfig& config = {});

}  // namespace engage::fusion
