#pragma once

#include <array>
#include <vector>

#include "engage/acoustic/acoustic.hpp"
#include "engage/body/face.hpp"
#include "engage/body/skeleton.hpp"
#include "engage/fusion/timeline.hpp"
#include "engage/laser/scan.hpp"
#include "engage/sim/script.hpp"

namespace engage::sim {

struct GaitModel {
  double stride_frequency = 1.0;  // full gait cycles per second
  double step_amplitude = 0.25;   // longitudinal foot swing, m
  double leg_space = 0.30;        // lateral distance between legs, m
  double foot_radius = 0.06;      // shin disc seen by the telemeter
  double walk_speed_min = 0.05;   // below this the agent stands still
};

struct SensorConfig {
  laser::ScanGeometry lidar;
  double lidar_noise = 0.02;

  double kinect_fov = 1.0471975511965976;  // 60 deg
  double kinect_max_depth = 4.0;
  double kinect_min_depth = 0.4;
  double joint_noise = 0.02;
  double kinect_height = 0.0;  // joint heights are reported sensor-relative

  double face_cone = 0.6981317007977318;  // 40 deg facing tolerance
  double face_miss_rate = 0.10;
  int image_width = 640;
  int image_height = 480;
  double focal_px = 525.0;
  double head_size_m = 0.16;
  double head_height = 1.55;

  double angle_noise = 0.08726646259971647;  // 5 deg azimuth noise
  acoustic::AcousticConfig audio;

  GaitModel gait;
  double approach_shoulder_rotation = 0.3490658503988659;  // 20 deg toward the robot

  std::uint64_t seed = 0;
};

struct FaceDetection {
  Timestamp t = 0;
  body::FaceBox box;
  int image_width = 640;
  int image_height = 480;
};

// Per-lidar-tick script truth used by tests: the scripted agent state and the
// exact pre-noise visibility of each foot.
struct AgentTruth {
  int agent_id = 0;
  bool present = false;
  bool walking = false;
  bool in_fov = false;
  Point2 position;
  Point2 left_foot;
  Point2 right_foot;
  bool left_visible = false;
  bool right_visible = false;
  bool left_occluded = false;   // hidden by another foot disc, not by walls
  bool right_occluded = false;
};

struct TickTruth {
  Timestamp t = 0;
  std::vector<AgentTruth> agents;
};

struct SimulationResult {
  std::vector<laser::LaserScan> laser;
  std::vector<body::SkeletonFrame> skeletons;
  std::vector<FaceDetection> faces;
  std::vector<acoustic::SadTag> sad;
  std::vector<acoustic::SourceLocalization> localization;
  std::vector<fusion::TimelineEvent> timeline;
  std::vector<TickTruth> truth;
  Timestamp t0 = 0;
  Timestamp t1 = 0;
};

// Deterministic scenario playback: ray-cast lidar returns against walls and
// foot discs, skeleton/face synthesis inside the depth-camera cone, SAD and
// source localization during speech, and the annotation timeline.
SimulationResult simulate(const ScenarioScript& script, const SensorConfig& config);

// Foot placement of the gait model at a script instant.
void feet_at(const AgentScript& agent, Timestamp t, const GaitModel& gait, Point2& left,
             Point2& right, bool& walking);

}  // namespace engage::sim
