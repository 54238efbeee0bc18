#include "engage/laser/detect.hpp"

#include <cmath>

namespace engage::laser {

namespace {

struct ForegroundPoint {
  std::size_t beam;
  Point2 p;
};

double dist(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

std::vector<FootCandidate> detect_moving_points(const BackgroundModel& model,
                                                const LaserScan& scan,
                                                const ScanGeometry& geom,
                                                const DetectorConfig& config) {
  std::vector<FootCandidate> out;
  if (!model.warmed_up()) return out;

  std::vector<ForegroundPoint> fg;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (std::isfinite(r) && r >= 0.0 && model.is_foreground(i, r)) {
      fg.push_back({i, beam_point(geom, i, r)});
    }
  }
  if (fg.empty()) return out;

  std::vector<ForegroundPoint> cluster;
  auto flush = [&]() {
    if (cluster.size() >= config.min_beams) {
      FootCandidate c;
      for (const auto& fp : cluster) {
        c.x += fp.p.x;
        c.y += fp.p.y;
      }
      c.x /= static_cast<double>(cluster.size());
      c.y /= static_cast<double>(cluster.size());
      c.beam_begin = cluster.front().beam;
      c.beam_end = cluster.back().beam + 1;
      out.push_back(c);
    }
    cluster.clear();
  };

  for (const auto& fp : fg) {
    if (!cluster.empty()) {
      const auto& last = cluster.back();
      const bool gap_too_wide = fp.beam - last.beam > config.gap_beams + 1;
      const bool too_far = dist(fp.p, last.p) > config.split_distance;
      if (gap_too_wide || too_far) flush();
    }
    cluster.push_back(fp);
  }
  flush();
  return out;
}

}  // namespace engage::laser
