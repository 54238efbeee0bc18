#include "engage/body/schegloff.hpp"

#include <cmath>
#include <numbers>

namespace engage::body {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool confident(const JointSample& j, const BodyConfig& c) {
  return j.confidence >= c.confidence_min;
}

}  // namespace

const char* to_string(Joint j) {
  switch (j) {
    case Joint::Head: return "head";
    case Joint::Neck: return "neck";
    case Joint::Torso: return "torso";
    case Joint::LeftShoulder: return "leftShoulder";
    case Joint::RightShoulder: return "rightShoulder";
    case Joint::LeftElbow: return "leftElbow";
    case Joint::RightElbow: return "rightElbow";
    case Joint::LeftHand: return "leftHand";
    case Joint::RightHand: return "rightHand";
    case Joint::LeftHip: return "leftHip";
    case Joint::RightHip: return "rightHip";
    case Joint::LeftKnee: return "leftKnee";
    case Joint::RightKnee: return "rightKnee";
    case Joint::LeftAnkle: return "leftAnkle";
    case Joint::RightAnkle: return "rightAnkle";
  }
  return "?";
}

std::optional<Joint> joint_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kJointCount; ++i) {
    const Joint j = static_cast<Joint>(i);
    if (s == to_string(j)) return j;
  }
  return std::nullopt;
}

double wrap_angle(double a) {
  double r = std::fmod(a + std::numbers::pi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - std::numbers::pi;
}

double circular_mean(double a, double b) {
  return wrap_angle(std::atan2((std::sin(a) + std::sin(b)) * 0.5,
                               (std::cos(a) + std::cos(b)) * 0.5));
}

double segment_rotation(const JointSample& left_joint, const JointSample& right_joint) {
  const double vx = right_joint.x - left_joint.x;
  const double vz = right_joint.z - left_joint.z;
  return wrap_angle(std::atan2(vz, vx));
}

SchegloffMetrics schegloff_metrics(const SkeletonFrame& skeleton, const BodyConfig& config) {
  SchegloffMetrics m;

  auto paired_segment = [&](Joint left, Joint right) -> std::optional<SegmentPose> {
    const JointSample& l = skeleton.joint(left);
    const JointSample& r = skeleton.joint(right);
    if (!confident(l, config) || !confident(r, config)) return std::nullopt;
    SegmentPose pose;
    pose.x = 0.5 * (l.x + r.x);
    pose.y = 0.5 * (l.y + r.y);
    pose.z = 0.5 * (l.z + r.z);
    pose.rot = segment_rotation(l, r);
    return pose;
  };

  m.stance = paired_segment(Joint::LeftAnkle, Joint::RightAnkle);
  m.hip = paired_segment(Joint::LeftHip, Joint::RightHip);
  m.shoulder = paired_segment(Joint::LeftShoulder, Joint::RightShoulder);

  // The torso is a single joint; its rotation interpolates the two segments
  // around it.
  const JointSample& torso = skeleton.joint(Joint::Torso);
  if (confident(torso, config) && m.hip && m.shoulder) {
    SegmentPose pose;
    pose.x = torso.x;
    pose.y = torso.y;
    pose.z = torso.z;
    pose.rot = circular_mean(m.hip->rot, m.shoulder->rot);
    m.torso = pose;
  }

  if (m.hip && m.stance) m.hip_torque = wrap_angle(m.hip->rot - m.stance->rot);
  if (m.torso && m.hip) m.torso_torque = wrap_angle(m.torso->rot - m.hip->rot);
  if (m.shoulder && m.torso) m.shoulder_torque = wrap_angle(m.shoulder->rot - m.torso->rot);
  return m;
}

std::optional<double> skeleton_distance(const SkeletonFrame& skeleton,
                                        const BodyConfig& config) {
  double sum = 0.0;
  int n = 0;
  for (Joint j : {Joint::Torso, Joint::LeftHip, Joint::RightHip, Joint::LeftShoulder,
                  Joint::RightShoulder}) {
    const JointSample& s = skeleton.joint(j);
    if (confident(s, config)) {
      sum += s.z;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace engage::body
