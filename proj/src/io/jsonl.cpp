#include "engage/io/jsonl.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace engage::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
}

json metrics_to_json(const body::SchegloffMetrics& m) {
  json j = json::object();
  auto put_pose = [&j](const char* name, const std::optional<body::SegmentPose>& pose) {
    if (pose) j[name] = {pose->x, pose->y, pose->z, pose->rot};
  };
  put_pose("stance", m.stance);
  put_pose("hip", m.hip);
  put_pose("torso", m.torso);
  put_pose("shoulder", m.shoulder);
  if (m.hip_torque) j["hipTorque"] = *m.hip_torque;
  if (m.torso_torque) j["torsoTorque"] = *m.torso_torque;
  if (m.shoulder_torque) j["shoulderTorque"] = *m.shoulder_torque;
  return j;
}

body::SchegloffMetrics metrics_from_json(const json& j) {
  body::SchegloffMetrics m;
  auto get_pose = [&j](const char* name) -> std::optional<body::SegmentPose> {
    if (!j.contains(name)) return std::nullopt;
    const auto& a = j.at(name);
    return body::SegmentPose{a.at(0), a.at(1), a.at(2), a.at(3)};
  };
  m.stance = get_pose("stance");
  m.hip = get_pose("hip");
  m.torso = get_pose("torso");
  m.shoulder = get_pose("shoulder");
  if (j.contains("hipTorque")) m.hip_torque = j.at("hipTorque").get<double>();
  if (j.contains("torsoTorque")) m.torso_torque = j.at("torsoTorque").get<double>();
  if (j.contains("shoulderTorque")) m.shoulder_torque = j.at("shoulderTorque").get<double>();
  return m;
}

}  // namespace

void write_laser_jsonl(const std::filesystem::path& path,
                       const std::vector<laser::LaserScan>& scans) {
  std::ofstream out = open_out(path);
  for (const laser::LaserScan& scan : scans) {
    json j;
    j["t"] = scan.t;
    j["ranges"] = scan.ranges;
    out << j.dump() << '\n';
  }
}

std::vector<laser::LaserScan> read_laser_jsonl(const std::filesystem::path& path) {
  std::vector<laser::LaserScan> scans;
  for_each_line(path, [&](const json& j) {
    laser::LaserScan scan;
    scan.t = j.at("t").get<Timestamp>();
    scan.ranges = j.at("ranges").get<std::vector<double>>();
    scans.push_back(std::move(scan));
  });
  return scans;
}

void write_scan_geometry(const std::filesystem::path& path, const laser::ScanGeometry& geom) {
  std::ofstream out = open_out(path);
  json j;
  j["angle_min"] = geom.angle_min;
  j["angle_max"] = geom.angle_max;
  j["B"] = geom.beam_count;
  j["max_range"] = geom.max_range;
  out << j.dump(2) << '\n';
}

laser::ScanGeometry read_scan_geometry(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  json j;
  in >> j;
  laser::ScanGeometry geom;
  geom.angle_min = j.at("angle_min");
  geom.angle_max = j.at("angle_max");
  geom.beam_count = j.at("B");
  geom.max_range = j.at("max_range");
  return geom;
}

void write_skeleton_jsonl(const std::filesystem::path& path,
                          const std::vector<body::SkeletonFrame>& frames) {
  std::ofstream out = open_out(path);
  for (const body::SkeletonFrame& f : frames) {
    json joints = json::object();
    for (std::size_t i = 0; i < body::kJointCount; ++i) {
      const body::JointSample& s = f.joints[i];
      joints[body::to_string(static_cast<body::Joint>(i))] = {s.x, s.y, s.z, s.confidence};
    }
    json j;
    j["t"] = f.t;
    j["id"] = f.skeleton_id;
    j["joints"] = joints;
    out << j.dump() << '\n';
  }
}

std::vector<body::SkeletonFrame> read_skeleton_jsonl(const std::filesystem::path& path) {
  std::vector<body::SkeletonFrame> frames;
  for_each_line(path, [&](const json& j) {
    body::SkeletonFrame f;
    f.t = j.at("t").get<Timestamp>();
    f.skeleton_id = j.at("id").get<int>();
    const json& joints = j.at("joints");
    for (std::size_t i = 0; i < body::kJointCount; ++i) {
      const auto& a = joints.at(body::to_string(static_cast<body::Joint>(i)));
      f.joints[i] = {a.at(0), a.at(1), a.at(2), a.at(3)};
    }
    frames.push_back(f);
  });
  return frames;
}

void write_face_jsonl(const std::filesystem::path& path,
                      const std::vector<sim::FaceDetection>& faces) {
  std::ofstream out = open_out(path);
  for (const sim::FaceDetection& f : faces) {
    json j;
    j["t"] = f.t;
    j["box"] = {f.box.px, f.box.py, f.box.size};
    j["image"] = {f.image_width, f.image_height};
    out << j.dump() << '\n';
  }
}

std::vector<sim::FaceDetection> read_face_jsonl(const std::filesystem::path& path) {
  std::vector<sim::FaceDetection> faces;
  for_each_line(path, [&](const json& j) {
    sim::FaceDetection f;
    f.t = j.at("t").get<Timestamp>();
    f.box = {j.at("box").at(0), j.at("box").at(1), j.at("box").at(2)};
    f.image_width = j.at("image").at(0);
    f.image_height = j.at("image").at(1);
    faces.push_back(f);
  });
  return faces;
}

void write_sad_jsonl(const std::filesystem::path& path,
                     const std::vector<acoustic::SadTag>& tags) {
  std::ofstream out = open_out(path);
  for (const acoustic::SadTag& tag : tags) {
    json j;
    j["t"] = tag.t;
    j["sad"] = tag.tag == acoustic::SadValue::Speech ? 1 : 0;
    out << j.dump() << '\n';
  }
}

std::vector<acoustic::SadTag> read_sad_jsonl(const std::filesystem::path& path) {
  std::vector<acoustic::SadTag> tags;
  for_each_line(path, [&](const json& j) {
    acoustic::SadTag tag;
    tag.t = j.at("t").get<Timestamp>();
    tag.tag = j.at("sad").get<int>() != 0 ? acoustic::SadValue::Speech
                                          : acoustic::SadValue::NotSpeech;
    tags.push_back(tag);
  });
  return tags;
}

void write_localization_jsonl(const std::filesystem::path& path,
                              const std::vector<acoustic::SourceLocalization>& events) {
  std::ofstream out = open_out(path);
  for (const acoustic::SourceLocalization& e : events) {
    json j;
    j["t"] = e.t;
    j["beam"] = e.beam;
    j["angle"] = e.angle;
    j["conf"] = e.confidence;
    out << j.dump() << '\n';
  }
}

std::vector<acoustic::SourceLocalization> read_localization_jsonl(
    const std::filesystem::path& path) {
  std::vector<acoustic::SourceLocalization> events;
  for_each_line(path, [&](const json& j) {
    acoustic::SourceLocalization e;
    e.t = j.at("t").get<Timestamp>();
    e.beam = j.at("beam");
    e.angle = j.at("angle");
    e.confidence = j.at("conf");
    events.push_back(e);
  });
  return events;
}

void write_timeline_jsonl(const std::filesystem::path& path,
                          const std::vector<fusion::TimelineEvent>& events) {
  std::ofstream out = open_out(path);
  for (const fusion::TimelineEvent& e : events) {
    json j;
    j["t"] = e.t;
    j["kind"] = fusion::to_string(e.kind);
    j["who"] = e.who;
    out << j.dump() << '\n';
  }
}

std::vector<fusion::TimelineEvent> read_timeline_jsonl(const std::filesystem::path& path) {
  std::vector<fusion::TimelineEvent> events;
  for_each_line(path, [&](const json& j) {
    fusion::TimelineEvent e;
    e.t = j.at("t").get<Timestamp>();
    auto kind = fusion::event_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw std::runtime_error("unknown timeline event kind");
    e.kind = *kind;
    e.who = j.at("who").get<int>();
    events.push_back(e);
  });
  return events;
}

void write_pedestrians_jsonl(const std::filesystem::path& path,
                             const std::vector<fusion::LaserRecord>& records,
                             const std::vector<laser::PedestrianFeatures>& all_pedestrians) {
  std::ofstream out = open_out(path);
  std::size_t cursor = 0;
  for (const fusion::LaserRecord& rec : records) {
    // One line per tracked pedestrian; the nearest one is flagged.
    while (cursor < all_pedestrians.size() && all_pedestrians[cursor].t <= rec.t) {
      const laser::PedestrianFeatures& p = all_pedestrians[cursor];
      if (p.t == rec.t) {
        json j;
        j["t"] = p.t;
        j["id"] = p.id;
        j["cible_x"] = p.cible_x;
        j["cible_y"] = p.cible_y;
        j["cible_dx"] = p.cible_dx;
        j["cible_dy"] = p.cible_dy;
        j["cible_dist"] = p.cible_dist;
        j["n"] = rec.count;
        j["nearest"] = p.id == rec.best.id;
        out << j.dump() << '\n';
      }
      ++cursor;
    }
  }
}

std::vector<fusion::LaserRecord> read_pedestrians_jsonl(const std::filesystem::path& path) {
  std::vector<fusion::LaserRecord> records;
  for_each_line(path, [&](const json& j) {
    if (!j.value("nearest", true)) return;
    fusion::LaserRecord rec;
    rec.t = j.at("t").get<Timestamp>();
    rec.best.t = rec.t;
    rec.best.id = j.at("id").get<int>();
    rec.best.cible_x = j.at("cible_x");
    rec.best.cible_y = j.at("cible_y");
    rec.best.cible_dx = j.at("cible_dx");
    rec.best.cible_dy = j.at("cible_dy");
    rec.best.cible_dist = j.at("cible_dist");
    rec.count = j.value("n", 1);
    records.push_back(rec);
  });
  return records;
}

void write_body_jsonl(const std::filesystem::path& path,
                      const std::vector<fusion::BodyRecord>& records) {
  std::ofstream out = open_out(path);
  for (const fusion::BodyRecord& r : records) {
    json j;
    j["t"] = r.t;
    j["id"] = r.skeleton_id;
    j["n"] = r.count;
    j["metrics"] = metrics_to_json(r.metrics);
    if (r.skl_dist) j["skl_dist"] = *r.skl_dist;
    if (r.has_joints) {
      json joints = json::object();
      for (std::size_t i = 0; i < body::kJointCount; ++i) {
        const body::JointSample& s = r.joints[i];
        joints[body::to_string(static_cast<body::Joint>(i))] = {s.x, s.y, s.z, s.confidence};
      }
      j["joints"] = joints;
    }
    out << j.dump() << '\n';
  }
}

std::vector<fusion::BodyRecord> read_body_jsonl(const std::filesystem::path& path) {
  std::vector<fusion::BodyRecord> records;
  for_each_line(path, [&](const json& j) {
    fusion::BodyRecord r;
    r.t = j.at("t").get<Timestamp>();
    r.skeleton_id = j.at("id").get<int>();
    r.count = j.at("n").get<int>();
    r.metrics = metrics_from_json(j.at("metrics"));
    if (j.contains("skl_dist")) r.skl_dist = j.at("skl_dist").get<double>();
    if (j.contains("joints")) {
      r.has_joints = true;
      const json& joints = j.at("joints");
      for (std::size_t i = 0; i < body::kJointCount; ++i) {
        const auto& a = joints.at(body::to_string(static_cast<body::Joint>(i)));
        r.joints[i] = {a.at(0), a.at(1), a.at(2), a.at(3)};
      }
    }
    records.push_back(r);
  });
  return records;
}

void write_facefeat_jsonl(const std::filesystem::path& path,
                          const std::vector<fusion::FaceFeatureRecord>& records) {
  std::ofstream out = open_out(path);
  for (const fusion::FaceFeatureRecord& r : records) {
    json j;
    j["t"] = r.t;
    j["face_x"] = r.features.face_x;
    j["face_y"] = r.features.face_y;
    j["face_size"] = r.features.face_size;
    j["n"] = r.count;
    out << j.dump() << '\n';
  }
}

std::vector<fusion::FaceFeatureRecord> read_facefeat_jsonl(const std::filesystem::path& path) {
  std::vector<fusion::FaceFeatureRecord> records;
  for_each_line(path, [&](const json& j) {
    fusion::FaceFeatureRecord r;
    r.t = j.at("t").get<Timestamp>();
    r.features.face_x = j.at("face_x");
    r.features.face_y = j.at("face_y");
    r.features.face_size = j.at("face_size");
    r.count = j.at("n").get<int>();
    records.push_back(r);
  });
  return records;
}

}  // namespace engage::io
