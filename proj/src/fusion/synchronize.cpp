#include "engage/fusion/synchronize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "engage/fusion/channels.hpp"

namespace engage::fusion {

namespace {

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

class FrameAssembler {
 public:
  FrameAssembler(const FeatureManifest& manifest, RawFrame& frame)
      : manifest_(manifest), frame_(frame) {}

  void set(const char* id, double value) {
    if (auto idx = manifest_.index_of(id)) {
      frame_.values[*idx] = value;
      frame_.feature_present[*idx] = true;
    }
  }

  void set_optional(const char* id, const std::optional<double>& value) {
    if (value) set(id, *value);
  }

 private:
  const FeatureManifest& manifest_;
  RawFrame& frame_;
};

void fill_laser(FrameAssembler& a, const LaserRecord& r) {
  a.set("cible_x", r.best.cible_x);
  a.set("cible_y", r.best.cible_y);
  a.set("cible_dx", r.best.cible_dx);
  a.set("cible_dy", r.best.cible_dy);
  a.set("cible_dist", r.best.cible_dist);
  a.set("number_of_pedestrians", r.count);
  a.set("pedestrian_id", r.best.id);
}

void fill_body(FrameAssembler& a, const BodyRecord& r) {
  const body::SchegloffMetrics& m = r.metrics;
  auto fill_segment = [&](const char* prefix, const std::optional<body::SegmentPose>& pose) {
    if (!pose) return;
    const std::string base = prefix;
    a.set((base + "Pose_x").c_str(), pose->x);
    a.set((base + "Pose_y").c_str(), pose->y);
    a.set((base + "Pose_z").c_str(), pose->z);
    a.set((base + "Pose_rot").c_str(), pose->rot);
  };
  fill_segment("stance", m.stance);
  fill_segment("hip", m.hip);
  fill_segment("torso", m.torso);
  fill_segment("shoulder", m.shoulder);
  a.set_optional("hipTorque", m.hip_torque);
  a.set_optional("torsoTorque", m.torso_torque);
  a.set_optional("shoulderTorque", m.shoulder_torque);
  a.set_optional("skl_dist", r.skl_dist);
  a.set("number_of_skeletons", r.count);
  a.set("skeleton_id", r.skeleton_id);
  if (r.has_joints) {
    for (std::size_t j = 0; j < body::kJointCount; ++j) {
      const std::string base = body::to_string(static_cast<body::Joint>(j));
      const body::JointSample& s = r.joints[j];
      a.set((base + "_x").c_str(), s.x);
      a.set((base + "_y").c_str(), s.y);
      a.set((base + "_z").c_str(), s.z);
      a.set((base + "_conf").c_str(), s.confidence);
    }
  }
}

void fill_face(FrameAssembler& a, const FaceFeatureRecord& r) {
  a.set("face_x", r.features.face_x);
  a.set("face_y", r.features.face_y);
  a.set("face_size", r.features.face_size);
  a.set("face_count", r.count);
}

}  // namespace

std::vector<RawFrame> synchronize(const FusionInputs& inputs,
                                  const FeatureManifest& manifest, Timestamp t0,
                                  Timestamp t1, const SyncConfig& config) {
  if (t0 >= t1) throw std::invalid_argument("synchronize requires t0 < t1");
  if (t0 % kTickUs != 0 || t1 % kTickUs != 0) {
    throw std::invalid_argument("t0 and t1 must be multiples of the 80 ms tick");
  }

  ChannelBuffer<LaserRecord> laser(inputs.laser);
  ChannelBuffer<BodyRecord> bodych(inputs.body);
  ChannelBuffer<FaceFeatureRecord> facech(inputs.face);
  ChannelBuffer<acoustic::SadTag> sadch(inputs.sad);
  ChannelBuffer<acoustic::SourceLocalization> locch(inputs.localization);

  std::vector<RawFrame> frames;
  const std::size_t n_ticks = static_cast<std::size_t>((t1 - t0) / kTickUs);
  frames.reserve(n_ticks);

  std::size_t sad_cursor = 0;
  const auto& sad_records = sadch.records();

  for (std::size_t i = 1; i <= n_ticks; ++i) {
    const Timestamp t = t0 + static_cast<Timestamp>(i) * kTickUs;
    RawFrame frame;
    frame.t = t;
    frame.values.assign(manifest.size(), kAbsent);
    frame.feature_present.assign(manifest.size(), false);
    FrameAssembler assembler(manifest, frame);

    if (const LaserRecord* r = laser.latest_at(t, config.laser_staleness)) {
      fill_laser(assembler, *r);
      frame.channel_present[static_cast<std::size_t>(Channel::Laser)] = true;
    }
    if (const BodyRecord* r = bodych.latest_at(t, config.skeleton_staleness)) {
      fill_body(assembler, *r);
      frame.channel_present[static_cast<std::size_t>(Channel::Skeleton)] = true;
    }
    if (const FaceFeatureRecord* r = facech.latest_at(t, config.face_staleness)) {
      fill_face(assembler, *r);
      frame.channel_present[static_cast<std::size_t>(Channel::Face)] = true;
    }

    // SAD aggregates over the whole tick window rather than holding one value.
    while (sad_cursor < sad_records.size() && sad_records[sad_cursor].t <= t - kTickUs) {
      ++sad_cursor;
    }
    std::vector<acoustic::SadTag> window;
    for (std::size_t s = sad_cursor; s < sad_records.size() && sad_records[s].t <= t; ++s) {
      window.push_back(sad_records[s]);
    }
    bool audio = false;
    if (auto sad = acoustic::sad_for_tick(window)) {
      assembler.set("sad_event", sad == acoustic::SadValue::Speech ? 1.0 : 0.0);
      int speech = 0;
      for (const auto& tag : window) speech += tag.tag == acoustic::SadValue::Speech ? 1 : 0;
      assembler.set("sad_confidence", static_cast<double>(speech) /
                                          static_cast<double>(window.size()));
      audio = true;
    }
    if (const acoustic::SourceLocalization* r =
            locch.latest_at(t, config.acoustic.localization_staleness)) {
      assembler.set("beam", r->beam);
      assembler.set("angle", r->angle);
      assembler.set("source_confidence", r->confidence);
      assembler.set("source_beam_energy", r->confidence);
      audio = true;
    }
    frame.channel_present[static_cast<std::size_t>(Channel::Audio)] = audio;

    frames.push_back(std::move(frame));
  }
  return frames;
}

FeatureVector impute_neutral(const RawFrame& frame, const FeatureManifest& manifest) {
  if (frame.values.size() != manifest.size()) {
    throw std::invalid_argument("frame/manifest arity mismatch");
  }
  FeatureVector out;
  out.values.resize(manifest.size());
  out.present = frame.channel_present;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    out.values[i] = frame.feature_present[i] ? frame.values[i] : manifest.at(i).neutral;
  }
  return out;
}

std::vector<SyncedFrame> label_from_timeline(const AnnotationTimeline& timeline,
                                             const std::vector<RawFrame>& frames,
                                             const FeatureManifest& manifest) {
  std::vector<SyncedFrame> out;
  out.reserve(frames.size());
  for (const RawFrame& raw : frames) {
    SyncedFrame frame;
    frame.t = raw.t;
    frame.features = impute_neutral(raw, manifest);
    frame.label = timeline.label_at(raw.t);
    out.push_back(std::move(frame));
  }
  return out;
}

std::vector<SyncedFrame> fuse(const FusionInputs& inputs, const AnnotationTimeline& timeline,
                              const FeatureManifest& manifest, Timestamp t0, Timestamp t1,
                              const SyncConfig& config) {
  return label_from_timeline(timeline, synchronize(inputs, manifest, t0, t1, config),
                             manifest);
}

}  // namespace engage::fusion
