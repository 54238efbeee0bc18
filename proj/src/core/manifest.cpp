#include "engage/core/manifest.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace engage {

namespace {

FeatureDef def(std::string id, Unit unit, Channel channel, double neutral = 0.0) {
  return FeatureDef{std::move(id), unit, channel, neutral};
}

std::vector<FeatureDef> selected32_defs() {
  using enum Unit;
  using enum Channel;
  // Ranked order of the 32-feature reference table.
  return {
      def("shoulderPose_rot", Radian, Skeleton),
      def("cible_dx", MeterPerSecond, Laser),
      def("cible_y", Meter, Laser),
      def("face_size", Pixel, Face),
      def("face_x", Pixel, Face),
      def("beam", Radian, Audio),
      def("angle", Radian, Audio),
      def("hipPose_x", Meter, Skeleton),
      def("hipPose_y", Meter, Skeleton),
      def("hipPose_rot", Radian, Skeleton),
      def("face_y", Pixel, Face),
      def("sad_event", Tag, Audio),
      def("stancePose_rot", Radian, Skeleton),
      def("torsoPose_rot", Radian, Skeleton),
      def("shoulderTorque", Radian, Skeleton),
      def("shoulderPose_y", Meter, Skeleton),
      def("source_confidence", Dimensionless, Audio),
      def("torsoTorque", Radian, Skeleton),
      def("stancePose_z", Meter, Skeleton),
      def("skl_dist", Meter, Skeleton),
      def("cible_x", Meter, Laser),
      def("hipTorque", Radian, Skeleton),
      def("torsoPose_y", Meter, Skeleton),
      def("torsoPose_x", Meter, Skeleton),
      def("shoulderPose_x", Meter, Skeleton),
      def("stancePose_x", Meter, Skeleton),
      def("cible_dy", MeterPerSecond, Laser),
      def("cible_dist", Meter, Laser),
      def("torsoPose_z", Meter, Skeleton),
      def("stancePose_y", Meter, Skeleton),
      def("hipPose_z", Meter, Skeleton),
      def("shoulderPose_z", Meter, Skeleton),
  };
}

const char* kJointNames[15] = {
    "head",     "neck",       "torso",         "leftShoulder", "rightShoulder",
    "leftElbow", "rightElbow", "leftHand",      "rightHand",    "leftHip",
    "rightHip", "leftKnee",   "rightKnee",     "leftAnkle",    "rightAnkle",
};

std::vector<FeatureDef> full99_defs() {
  using enum Unit;
  using enum Channel;
  std::vector<FeatureDef> defs = selected32_defs();
  // Raw joint tuples: x, y, z, confidence per joint.
  for (const char* joint : kJointNames) {
    const std::string base = joint;
    defs.push_back(def(base + "_x", Meter, Skeleton));
    defs.push_back(def(base + "_y", Meter, Skeleton));
    defs.push_back(def(base + "_z", Meter, Skeleton));
    defs.push_back(def(base + "_conf", Dimensionless, Skeleton));
  }
  // Stream bookkeeping counters and ids.
  defs.push_back(def("number_of_pedestrians", Count, Laser));
  defs.push_back(def("pedestrian_id", Count, Laser));
  defs.push_back(def("number_of_skeletons", Count, Skeleton));
  defs.push_back(def("skeleton_id", Count, Skeleton));
  defs.push_back(def("face_count", Count, Face));
  defs.push_back(def("sad_confidence", Dimensionless, Audio));
  defs.push_back(def("source_beam_energy", Dimensionless, Audio));
  return defs;
}

}  // namespace

const char* to_string(Unit u) {
  switch (u) {
    case Unit::Meter: return "meter";
    case Unit::MeterPerSecond: return "meter_per_second";
    case Unit::Radian: return "radian";
    case Unit::Pixel: return "pixel";
    case Unit::Tag: return "tag";
    case Unit::Count: return "count";
    case Unit::Dimensionless: return "dimensionless";
  }
  return "?";
}

std::optional<Unit> unit_from_string(std::string_view s) {
  for (Unit u : {Unit::Meter, Unit::MeterPerSecond, Unit::Radian, Unit::Pixel, Unit::Tag,
                 Unit::Count, Unit::Dimensionless}) {
    if (s == to_string(u)) return u;
  }
  return std::nullopt;
}

FeatureManifest::FeatureManifest(Edition edition, std::vector<FeatureDef> features)
    : edition_(edition), features_(std::move(features)) {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    for (std::size_t j = i + 1; j < features_.size(); ++j) {
      if (features_[i].id == features_[j].id) {
        throw std::invalid_argument("duplicate feature id: " + features_[i].id);
      }
    }
  }
  const std::size_t expected = edition == Edition::Selected32 ? 32 : 99;
  if (features_.size() != expected) {
    throw std::invalid_argument("manifest edition size mismatch: got " +
                                std::to_string(features_.size()));
  }
}

const FeatureManifest& FeatureManifest::selected32() {
  static const FeatureManifest m(Edition::Selected32, selected32_defs());
  return m;
}

const FeatureManifest& FeatureManifest::full99() {
  static const FeatureManifest m(Edition::Full99, full99_defs());
  return m;
}

const FeatureManifest& FeatureManifest::edition(Edition e) {
  return e == Edition::Selected32 ? selected32() : full99();
}

void FeatureManifest::serialize(std::ostream& out) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const FeatureDef& f = features_[i];
    out << i << '\t' << f.id << '\t' << to_string(f.unit) << '\t' << to_string(f.channel)
        << '\t' << f.neutral << '\n';
  }
}

FeatureManifest FeatureManifest::parse(std::istream& in, Edition edition) {
  std::vector<FeatureDef> defs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t index = 0;
    FeatureDef f;
    std::string unit_s;
    std::string channel_s;
    if (!(ls >> index >> f.id >> unit_s >> channel_s >> f.neutral)) {
      throw std::invalid_argument("malformed manifest line: " + line);
    }
    if (index != defs.size()) {
      throw std::invalid_argument("manifest indices out of order at line: " + line);
    }
    auto unit = unit_from_string(unit_s);
    auto channel = channel_from_string(channel_s);
    if (!unit || !channel) {
      throw std::invalid_argument("unknown unit or channel in line: " + line);
    }
    f.unit = *unit;
    f.channel = *channel;
    defs.push_back(std::move(f));
  }
  return FeatureManifest(edition, std::move(defs));
}

std::optional<std::size_t> FeatureManifest::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> FeatureManifest::channel_indices(Channel c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].channel == c) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FeatureManifest::spatial_indices() const {
  std::vector<std::size_t> out;
  for (const char* id : {"cible_x", "cible_y", "cible_dx", "cible_dy", "cible_dist"}) {
    auto idx = index_of(id);
    if (!idx) throw std::logic_error("manifest misses spatial feature");
    out.push_back(*idx);
  }
  return out;
}

bool FeatureManifest::operator==(const FeatureManifest& other) const {
  if (edition_ != other.edition_ || features_.size() != other.features_.size()) return false;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const FeatureDef& a = features_[i];
    const FeatureDef& b = other.features_[i];
    if (a.id != b.id || a.unit != b.unit || a.channel != b.channel || a.neutral != b.neutral) {
      return false;
    }
  }
  return true;
}

FeatureVector neutral_vector(const FeatureManifest& manifest) {
  FeatureVector v;
  v.values.reserve(manifest.size());
  for (const FeatureDef& f : manifest.features()) v.values.push_back(f.neutral);
  v.present.fill(false);
  return v;
}

}  // namespace engage
