#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "engage/classify/dataset.hpp"

namespace engage::classify {

struct SvmConfig {
  double lambda = 1e-4;  // L2 regularization
  int epochs = 20;
  std::uint64_t seed = 0;
};

// Linear one-vs-rest SVM trained by stochastic subgradient descent on the
// hinge loss with step 1/(lambda * t).
class SvmModel {
 public:
  static SvmModel train(const Dataset& train, const SvmConfig& config);

  int predict(const std::vector<double>& row) const;
  std::vector<double> scores(const std::vector<double>& row) const;

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& biases() const { return biases_; }
  const SvmConfig& config() const { return config_; }
  std::size_t n_classes() const { return weights_.size(); }

  void save(std::ostream& out) const;
  static SvmModel load(std::istream& in);

 private:
  std::vector<std::vector<double>> weights_;  // per class
  std::vector<double> biases_;
  SvmConfig config_;
};

}  // namespace engage::classify
