#pragma once

#include <optional>

#include "engage/body/skeleton.hpp"

namespace engage::body {

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Circular mean of two angles, wrapped to (-pi, pi].
double circular_mean(double a, double b);

struct SegmentPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double rot = 0.0;
};

// Position and orientation of stance, hips, torso and shoulders plus the
// relative torques between adjacent segments: 19 values. Individual entries
// are absent when the contributing joints fall under the confidence floor.
struct SchegloffMetrics {
  std::optional<SegmentPose> stance;
  std::optional<SegmentPose> hip;
  std::optional<SegmentPose> torso;
  std::optional<SegmentPose> shoulder;
  std::optional<double> hip_torque;       // hip rot - stance rot
  std::optional<double> torso_torque;     // torso rot - hip rot
  std::optional<double> shoulder_torque;  // shoulder rot - torso rot
};

struct BodyConfig {
  double confidence_min = 0.5;
};

// Facing angle of a left/right joint pair in the ground plane. Zero means the
// segment faces the sensor; positive angles correspond to the subject turning
// toward their right (wraps to (-pi, pi]).
double segment_rotation(const JointSample& left_joint, const JointSample& right_joint);

SchegloffMetrics schegloff_metrics(const SkeletonFrame& skeleton,
                                   const BodyConfig& config = {});

// Mean z over the confident subset of {torso, hips, shoulders}; absent when
// no contributing joint is confident.
std::optional<double> skeleton_distance(const SkeletonFrame& skeleton,
                                        const BodyConfig& config = {});

}  // namespace engage::body
