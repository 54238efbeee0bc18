#include "engage/laser/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace engage::laser {

LaserTracker::LaserTracker(const TrackerConfig& config)
    : config_(config),
      background_(config.geometry.beam_count, config.bg_alpha, config.bg_tau_fg,
                  config.bg_warmup) {}

const FootTrack* LaserTracker::find_foot(int id) const {
  for (const auto& f : feet_) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

FootTrack* LaserTracker::find_foot(int id) {
  return const_cast<FootTrack*>(std::as_const(*this).find_foot(id));
}

bool LaserTracker::foot_paired(int foot_id) const {
  for (const auto& p : pedestrians_) {
    if (p.has_foot(foot_id)) return true;
  }
  return false;
}

void LaserTracker::associate(const std::vector<FootCandidate>& candidates) {
  for (auto& foot : feet_) {
    foot.filter.predict();
    ++foot.age;
  }

  // Greedy nearest-neighbor within the gate, deterministic tie-break on
  // (distance, track id, candidate index).
  struct PairCost {
    double d;
    std::size_t track;
    std::size_t cand;
  };
  std::vector<PairCost> costs;
  for (std::size_t ti = 0; ti < feet_.size(); ++ti) {
    const Eigen::Vector2d pred = feet_[ti].filter.position();
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const double d = std::hypot(candidates[ci].x - pred.x(), candidates[ci].y - pred.y());
      if (d <= config_.gate_radius) costs.push_back({d, ti, ci});
    }
  }
  std::sort(costs.begin(), costs.end(), [](const PairCost& a, const PairCost& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.track != b.track) return a.track < b.track;
    return a.cand < b.cand;
  });

  std::vector<bool> track_used(feet_.size(), false);
  std::vector<bool> cand_used(candidates.size(), false);
  for (const auto& pc : costs) {
    if (track_used[pc.track] || cand_used[pc.cand]) continue;
    track_used[pc.track] = true;
    cand_used[pc.cand] = true;
    FootTrack& foot = feet_[pc.track];
    const FootCandidate& cand = candidates[pc.cand];
    foot.filter.update(cand.x, cand.y);
    foot.misses = 0;
    foot.recent_positions.push_back(Eigen::Vector2d(cand.x, cand.y));
    while (foot.recent_positions.size() > config_.pairing.direction_history) {
      foot.recent_positions.pop_front();
    }
    foot.direction = foot_direction(foot, config_.pairing);
  }

  for (std::size_t ti = 0; ti < feet_.size(); ++ti) {
    if (!track_used[ti]) ++feet_[ti].misses;
  }

  // Deletion after too many misses; drop the foot from its pedestrian too.
  std::vector<int> dead;
  for (const auto& f : feet_) {
    if (f.misses >= config_.foot_max_misses) dead.push_back(f.id);
  }
  for (int id : dead) {
    feet_.erase(std::remove_if(feet_.begin(), feet_.end(),
                               [&](const FootTrack& f) { return f.id == id; }),
                feet_.end());
    for (auto& p : pedestrians_) {
      p.foot_ids.erase(std::remove(p.foot_ids.begin(), p.foot_ids.end(), id),
                       p.foot_ids.end());
    }
    for (auto it = pair_candidates_.begin(); it != pair_candidates_.end();) {
      if (it->first.first == id || it->first.second == id) {
        it = pair_candidates_.erase(it);
      } else {
        ++it;
      }
    }
  }
  // A pedestrian is lost when both feet have disappeared.
  pedestrians_.erase(std::remove_if(pedestrians_.begin(), pedestrians_.end(),
                                    [](const PedestrianTrack& p) { return p.foot_ids.empty(); }),
                     pedestrians_.end());

  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    if (cand_used[ci]) continue;
    FootTrack foot(next_foot_id_++, candidates[ci].x, candidates[ci].y, config_.kalman);
    foot.recent_positions.push_back(Eigen::Vector2d(candidates[ci].x, candidates[ci].y));
    feet_.push_back(std::move(foot));
  }
}

void LaserTracker::update_pairings() {
  const PairingConfig& pc = config_.pairing;

  // A single-foot pedestrian re-acquires the nearest free foot inside the gate.
  for (auto& ped : pedestrians_) {
    if (ped.foot_ids.size() != 1) continue;
    const FootTrack* anchor = find_foot(ped.foot_ids.front());
    if (anchor == nullptr) continue;
    int best_id = -1;
    double best_d = config_.pairing.pair_gate;
    for (const auto& f : feet_) {
      if (f.id == anchor->id || foot_paired(f.id)) continue;
      const double d = (f.filter.position() - anchor->filter.position()).norm();
      if (d < best_d) {
        best_d = d;
        best_id = f.id;
      }
    }
    if (best_id >= 0) ped.foot_ids.push_back(best_id);
  }

  // Stage 1: gate unpaired feet pairs at < 1 m.
  std::vector<std::pair<int, int>> gated;
  for (std::size_t i = 0; i < feet_.size(); ++i) {
    if (foot_paired(feet_[i].id)) continue;
    for (std::size_t j = i + 1; j < feet_.size(); ++j) {
      if (foot_paired(feet_[j].id)) continue;
      const double d = (feet_[i].filter.position() - feet_[j].filter.position()).norm();
      if (d < pc.pair_gate) {
        gated.emplace_back(std::min(feet_[i].id, feet_[j].id),
                           std::max(feet_[i].id, feet_[j].id));
      }
    }
  }

  // Stage 2: a candidate becomes a pedestrian once the leg space stays steady
  // over the whole window.
  for (const auto& key : gated) {
    const FootTrack* a = find_foot(key.first);
    const FootTrack* b = find_foot(key.second);
    const Eigen::Vector2d dir = main_direction(*a, *b, pc);
    if (dir.isZero()) continue;  // pedestrians initialize only in movement
    auto& window = pair_candidates_[key];
    if (window.last_frame >= 0 && window.last_frame != frame_ - 1) window.samples.clear();
    window.last_frame = frame_;
    window.samples.push_back(leg_space(a->filter.position(), b->filter.position(), dir));
    while (window.samples.size() > pc.window) window.samples.pop_front();
    if (pairing_window_accepts(window.samples, pc)) {
      PedestrianTrack ped;
      ped.id = next_pedestrian_id_++;
      ped.foot_ids = {key.first, key.second};
      ped.leg_space_window.assign(window.samples.begin(), window.samples.end());
      pedestrians_.push_back(std::move(ped));
      // Feet belong to at most one pedestrian: retire competing candidates.
      for (auto it = pair_candidates_.begin(); it != pair_candidates_.end();) {
        const auto& k = it->first;
        if (k.first == key.first || k.second == key.first || k.first == key.second ||
            k.second == key.second) {
          it = pair_candidates_.erase(it);
        } else {
          ++it;
        }
      }
    }
  }

  // Track the live leg-space window of confirmed pedestrians.
  for (auto& ped : pedestrians_) {
    if (ped.foot_ids.size() != 2) continue;
    const FootTrack* a = find_foot(ped.foot_ids[0]);
    const FootTrack* b = find_foot(ped.foot_ids[1]);
    const Eigen::Vector2d dir = main_direction(*a, *b, pc);
    if (dir.isZero()) continue;
    ped.leg_space_window.push_back(leg_space(a->filter.position(), b->filter.position(), dir));
    while (ped.leg_space_window.size() > pc.window) ped.leg_space_window.pop_front();
  }
}

TrackOutput LaserTracker::emit(Timestamp t) const {
  TrackOutput out;
  for (const auto& ped : pedestrians_) {
    Eigen::Vector2d pos = Eigen::Vector2d::Zero();
    Eigen::Vector2d vel = Eigen::Vector2d::Zero();
    int live = 0;
    for (int fid : ped.foot_ids) {
      const FootTrack* f = find_foot(fid);
      if (f == nullptr) continue;
      pos += f->filter.position();
      vel += f->filter.velocity();
      ++live;
    }
    if (live == 0) continue;
    pos /= live;
    vel /= live;
    PedestrianFeatures feat;
    feat.t = t;
    feat.id = ped.id;
    feat.cible_x = pos.x();
    feat.cible_y = pos.y();
    feat.cible_dx = vel.x();
    feat.cible_dy = vel.y();
    feat.cible_dist = std::sqrt(feat.cible_x * feat.cible_x + feat.cible_y * feat.cible_y);
    out.pedestrians.push_back(feat);
  }
  out.n_pedestrians = out.pedestrians.size();
  return out;
}

TrackOutput LaserTracker::track_scan(const LaserScan& scan) {
  background_.update(scan);
  const auto candidates = detect_moving_points(background_, scan, config_.geometry,
                                               config_.detector);
  associate(candidates);
  update_pairings();
  ++frame_;
  return emit(scan.t);
}

int LaserTracker::psd_repairs() const {
  int n = 0;
  for (const auto& f : feet_) n += f.filter.psd_repairs();
  return n;
}

}  // namespace engage::laser
