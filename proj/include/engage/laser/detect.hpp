#pragma once

#include <cstddef>
#include <vector>

#include "engage/laser/background.hpp"
#include "engage/laser/scan.hpp"

namespace engage::laser {

struct FootCandidate {
  double x = 0.0;
  double y = 0.0;
  std::size_t beam_begin = 0;  // inclusive
  std::size_t beam_end = 0;    // exclusive
};

struct DetectorConfig {
  std::size_t gap_beams = 2;     // background beams tolerated inside one run
  double split_distance = 0.15;  // Euclidean split between adjacent foreground points
  std::size_t min_beams = 2;     // rejects single-beam speckle
};

// Clusters foreground beams into foot candidates; centroids are reported in the
// robot reference frame. Empty when nothing moves.
std::vector<FootCandidate> detect_moving_points(const BackgroundModel& model,
                                                const LaserScan& scan,
                                                const ScanGeometry& geom,
                                                const DetectorConfig& config = {});

}  // namespace engage::laser
