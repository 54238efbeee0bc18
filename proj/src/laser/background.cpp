#include "engage/laser/background.hpp"

#include <stdexcept>

namespace engage::laser {

BackgroundModel::BackgroundModel(std::size_t beam_count, double alpha, double tau_fg,
                                 int warmup)
    : bg_(beam_count, 0.0), alpha_(alpha), tau_fg_(tau_fg), warmup_(warmup) {
  if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
  if (tau_fg <= 0.0) throw std::invalid_argument("tau_fg must be positive");
}

void BackgroundModel::update(const LaserScan& scan) {
  if (scan.ranges.size() != bg_.size()) {
    throw std::invalid_argument("scan beam count " + std::to_string(scan.ranges.size()) +
                                " does not match background model " +
                                std::to_string(bg_.size()));
  }
  if (seen_ == 0) {
    bg_ = scan.ranges;
    ++seen_;
    return;
  }
  const bool warm = warmed_up();
  for (std::size_t i = 0; i < bg_.size(); ++i) {
    const double r = scan.ranges[i];
    if (warm && is_foreground(i, r)) continue;  // moving object, keep background
    bg_[i] = (1.0 - alpha_) * bg_[i] + alpha_ * r;
  }
  ++seen_;
}

}  // namespace engage::laser
