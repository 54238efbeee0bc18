#include "engage/laser/pairing.hpp"

#include <cmath>

namespace engage::laser {

double leg_space(const Eigen::Vector2d& foot_a, const Eigen::Vector2d& foot_b,
                 const Eigen::Vector2d& main_direction) {
  const double norm = main_direction.norm();
  if (norm == 0.0) throw InsufficientFeet();
  const Eigen::Vector2d dir = main_direction / norm;
  const Eigen::Vector2d mid = 0.5 * (foot_a + foot_b);
  // Perpendicular component of each foot offset from the direction line.
  auto perp = [&](const Eigen::Vector2d& foot) {
    const Eigen::Vector2d rel = foot - mid;
    const double along = rel.dot(dir);
    return (rel - along * dir).norm();
  };
  return perp(foot_a) + perp(foot_b);
}

WindowStats window_stats(const std::deque<double>& samples) {
  WindowStats s;
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  for (double v : samples) s.mean += v;
  s.mean /= n;
  double var = 0.0;
  for (double v : samples) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / n);
  return s;
}

bool pairing_window_accepts(const std::deque<double>& samples, const PairingConfig& config) {
  if (samples.size() < config.window) return false;
  const WindowStats s = window_stats(samples);
  return s.mean >= config.leg_space_min && s.mean <= config.leg_space_max &&
         s.stddev < config.leg_space_stddev_max;
}

Eigen::Vector2d foot_direction(const FootTrack& track, const PairingConfig& config) {
  if (track.recent_positions.size() < 2) return Eigen::Vector2d::Zero();
  const Eigen::Vector2d disp = track.recent_positions.back() - track.recent_positions.front();
  const double n = disp.norm();
  if (n < config.direction_min_displacement) return Eigen::Vector2d::Zero();
  return disp / n;
}

Eigen::Vector2d main_direction(const FootTrack& a, const FootTrack& b,
                               const PairingConfig& config) {
  const Eigen::Vector2d sum = foot_direction(a, config) + foot_direction(b, config);
  const double n = sum.norm();
  if (n == 0.0) return Eigen::Vector2d::Zero();
  return sum / n;
}

}  // namespace engage::laser
