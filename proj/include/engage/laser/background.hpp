#pragma once

#include <vector>

#include "engage/laser/scan.hpp"

namespace engage::laser {

// Per-beam exponential-average range background. A beam is foreground when the
// observed range undercuts the learned background by more than tau_fg.
class BackgroundModel {
 public:
  BackgroundModel(std::size_t beam_count, double alpha = 0.02, double tau_fg = 0.25,
                  int warmup = 25);

  // Updates the per-beam averages; foreground beams do not adapt once warmup
  // has completed. Throws on beam-count mismatch.
  void update(const LaserScan& scan);

  bool warmed_up() const { return seen_ >= warmup_; }
  bool is_foreground(std::size_t beam, double range) const {
    return range < bg_[beam] - tau_fg_;
  }

  const std::vector<double>& background() const { return bg_; }
  std::size_t beam_count() const { return bg_.size(); }
  int scans_seen() const { return seen_; }

 private:
  std::vector<double> bg_;
  double alpha_;
  double tau_fg_;
  int warmup_;
  int seen_ = 0;
};

}  // namespace engage::laser
