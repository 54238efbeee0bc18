#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "engage/core/types.hpp"

namespace engage::body {

// The 15-joint skeleton reported by the depth sensor. Sensor frame is the
// mirrored depth-camera convention: x lateral (the subject's right appears at
// positive x when facing the sensor), y up, z depth away from the sensor.
enum class Joint : std::uint8_t {
  Head = 0,
  Neck,
  Torso,
  LeftShoulder,
  RightShoulder,
  LeftElbow,
  RightElbow,
  LeftHand,
  RightHand,
  LeftHip,
  RightHip,
  LeftKnee,
  RightKnee,
  LeftAnkle,
  RightAnkle,
};
inline constexpr std::size_t kJointCount = 15;

const char* to_string(Joint j);
std::optional<Joint> joint_from_string(std::string_view s);

struct JointSample {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double confidence = 0.0;
};

struct SkeletonFrame {
  Timestamp t = 0;
  int skeleton_id = 0;
  std::array<JointSample, kJointCount> joints{};

  const JointSample& joint(Joint j) const { return joints[static_cast<std::size_t>(j)]; }
  JointSample& joint(Joint j) { return joints[static_cast<std::size_t>(j)]; }
};

}  // namespace engage::body
