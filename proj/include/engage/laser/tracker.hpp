#pragma once

#include <map>
#include <utility>
#include <vector>

#include "engage/core/types.hpp"
#include "engage/laser/background.hpp"
#include "engage/laser/detect.hpp"
#include "engage/laser/pairing.hpp"

namespace engage::laser {

// Table-1 spatial features of one tracked pedestrian at one tick.
struct PedestrianFeatures {
  Timestamp t = 0;
  int id = 0;
  double cible_x = 0.0;
  double cible_y = 0.0;
  double cible_dx = 0.0;
  double cible_dy = 0.0;
  double cible_dist = 0.0;
};

struct TrackerConfig {
  ScanGeometry geometry;
  DetectorConfig detector;
  KalmanConfig kalman;
  PairingConfig pairing;
  double bg_alpha = 0.02;
  double bg_tau_fg = 0.25;
  int bg_warmup = 25;
  double gate_radius = 0.5;
  int foot_max_misses = 8;
};

struct TrackOutput {
  std::vector<PedestrianFeatures> pedestrians;
  std::size_t n_pedestrians = 0;
};

// Feet detection, per-foot Kalman tracking and leg-space pairing over a scan
// stream. Single writer; one instance per stream.
class LaserTracker {
 public:
  explicit LaserTracker(const TrackerConfig& config = {});

  TrackOutput track_scan(const LaserScan& scan);

  const std::vector<FootTrack>& foot_tracks() const { return feet_; }
  const std::vector<PedestrianTrack>& pedestrians() const { return pedestrians_; }
  const BackgroundModel& background() const { return background_; }
  int psd_repairs() const;

 private:
  const FootTrack* find_foot(int id) const;
  FootTrack* find_foot(int id);
  bool foot_paired(int foot_id) const;
  void associate(const std::vector<FootCandidate>& candidates);
  void update_pairings();
  TrackOutput emit(Timestamp t) const;

  TrackerConfig config_;
  BackgroundModel background_;
  std::vector<FootTrack> feet_;
  std::vector<PedestrianTrack> pedestrians_;

  struct CandidateWindow {
    std::deque<double> samples;
    long last_frame = -1;
  };
  std::map<std::pair<int, int>, CandidateWindow> pair_candidates_;

  long frame_ = 0;
  int next_foot_id_ = 0;
  int next_pedestrian_id_ = 0;
};

}  // namespace engage::laser
