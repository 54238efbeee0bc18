#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "engage/laser/kalman.hpp"

namespace engage::laser {

struct FootTrack {
  int id = 0;
  FootKalman filter;
  Eigen::Vector2d direction = Eigen::Vector2d::Zero();  // unit vector, zero if stationary
  std::deque<Eigen::Vector2d> recent_positions;         // confirmed measurements
  int age = 0;
  int misses = 0;

  FootTrack(int id_, double x, double y, const KalmanConfig& config)
      : id(id_), filter(x, y, config) {}
};

struct PairingConfig {
  double pair_gate = 1.0;        // stage-1 distance gate between unpaired feet
  std::size_t window = 6;        // leg-space samples per candidate (480 ms)
  double leg_space_min = 0.10;
  double leg_space_max = 0.45;
  double leg_space_stddev_max = 0.05;
  double direction_min_displacement = 0.02;
  std::size_t direction_history = 3;
};

struct InsufficientFeet : std::runtime_error {
  InsufficientFeet() : std::runtime_error("leg space requires two feet and a direction") {}
};

// d1 + d2: perpendicular distances from each foot to the line through the feet
// midpoint along the main direction vector. Throws InsufficientFeet when the
// direction is zero.
double leg_space(const Eigen::Vector2d& foot_a, const Eigen::Vector2d& foot_b,
                 const Eigen::Vector2d& main_direction);

struct PedestrianTrack {
  int id = 0;
  std::vector<int> foot_ids;                // one or two live feet
  std::deque<double> leg_space_window;      // recent leg-space samples

  bool has_foot(int foot_id) const {
    for (int f : foot_ids) {
      if (f == foot_id) return true;
    }
    return false;
  }
};

struct WindowStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

WindowStats window_stats(const std::deque<double>& samples);

// Stage-2 promotion rule: a full window whose leg-space mean sits in the gait
// band with a small spread.
bool pairing_window_accepts(const std::deque<double>& samples, const PairingConfig& config);

// Direction vector of a foot: normalized displacement over the recent
// confirmed positions, zero when the displacement stays under the threshold.
Eigen::Vector2d foot_direction(const FootTrack& track, const PairingConfig& config);

// Sum of the two foot directions, normalized (zero-safe).
Eigen::Vector2d main_direction(const FootTrack& a, const FootTrack& b,
                               const PairingConfig& config);

}  // namespace engage::laser
