#pragma once

#include <cmath>
#include <vector>

#include "engage/core/types.hpp"

namespace engage::laser {

// Geometry of the single-row 270 degree range scanner.
struct ScanGeometry {
  double angle_min = -2.356194490192345;  // -135 deg
  double angle_max = 2.356194490192345;   // +135 deg
  std::size_t beam_count = 541;           // 0.5 deg pitch
  double max_range = 10.0;

  double bearing(std::size_t beam) const {
    return angle_min + (angle_max - angle_min) *
                           (static_cast<double>(beam) / static_cast<double>(beam_count - 1));
  }
};

struct LaserScan {
  Timestamp t = 0;
  std::vector<double> ranges;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 beam_point(const ScanGeometry& geom, std::size_t beam, double range) {
  const double a = geom.bearing(beam);
  return {range * std::cos(a), range * std::sin(a)};
}

}  // namespace engage::laser
