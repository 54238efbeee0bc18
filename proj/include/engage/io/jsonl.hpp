#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "engage/fusion/synchronize.hpp"
#include "engage/laser/scan.hpp"
#include "engage/sim/simulate.hpp"

namespace engage::io {

// JSON Lines codecs for every stream format. Writers are deterministic:
// identical records produce identical bytes.

void write_laser_jsonl(const std::filesystem::path& path,
                       const std::vector<laser::LaserScan>& scans);
std::vector<laser::LaserScan> read_laser_jsonl(const std::filesystem::path& path);

void write_scan_geometry(const std::filesystem::path& path, const laser::ScanGeometry& geom);
laser::ScanGeometry read_scan_geometry(const std::filesystem::path& path);

void write_skeleton_jsonl(const std::filesystem::path& path,
                          const std::vector<body::SkeletonFrame>& frames);
std::vector<body::SkeletonFrame> read_skeleton_jsonl(const std::filesystem::path& path);

void write_face_jsonl(const std::filesystem::path& path,
                      const std::vector<sim::FaceDetection>& faces);
std::vector<sim::FaceDetection> read_face_jsonl(const std::filesystem::path& path);

void write_sad_jsonl(const std::filesystem::path& path,
                     const std::vector<acoustic::SadTag>& tags);
std::vector<acoustic::SadTag> read_sad_jsonl(const std::filesystem::path& path);

void write_localization_jsonl(const std::filesystem::path& path,
                              const std::vector<acoustic::SourceLocalization>& events);
std::vector<acoustic::SourceLocalization> read_localization_jsonl(
    const std::filesystem::path& path);

void write_timeline_jsonl(const std::filesystem::path& path,
                          const std::vector<fusion::TimelineEvent>& events);
std::vector<fusion::TimelineEvent> read_timeline_jsonl(const std::filesystem::path& path);

void write_pedestrians_jsonl(const std::filesystem::path& path,
                             const std::vector<fusion::LaserRecord>& records,
                             const std::vector<laser::PedestrianFeatures>& all_pedestrians);
std::vector<fusion::LaserRecord> read_pedestrians_jsonl(const std::filesystem::path& path);

void write_body_jsonl(const std::filesystem::path& path,
                      const std::vector<fusion::BodyRecord>& records);
std::vector<fusion::BodyRecord> read_body_jsonl(const std::filesystem::path& path);

void write_facefeat_jsonl(const std::filesystem::path& path,
                          const std::vector<fusion::FaceFeatureRecord>& records);
std::vector<fusion::FaceFeatureRecord> read_facefeat_jsonl(const std::filesystem::path& path);

}  // namespace engage::io
