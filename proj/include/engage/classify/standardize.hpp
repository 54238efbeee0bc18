#pragma once

#include <vector>

#include "engage/classify/dataset.hpp"

namespace engage::classify {

// Per-feature affine scaling fitted on the training split only; the stddev
// floors at 1e-12 so constant features map to zero.
class Standardizer {
 public:
  static Standardizer fit(const Dataset& train);

  std::vector<double> apply(const std::vector<double>& row) const;
  Dataset apply(const Dataset& data) const;

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

}  // namespace engage::classify
