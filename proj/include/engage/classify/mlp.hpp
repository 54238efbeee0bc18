#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "engage/classify/dataset.hpp"

namespace engage::classify {

struct MlpConfig {
  std::size_t hidden = 0;  // 0: ceil((features + classes) / 2)
  double learning_rate = 0.3;
  double momentum = 0.2;
  int epochs = 500;
  std::uint64_t seed = 0;
};

// Single hidden layer perceptron: sigmoid hidden units, softmax output,
// trained by per-sample backpropagation with momentum on the cross-entropy.
class MlpModel {
 public:
  static MlpModel train(const Dataset& train, const MlpConfig& config);

  // Fresh network with seeded initial weights (training entry point and
  // gradient-check fixture).
  static MlpModel initialize(std::size_t n_features, std::size_t n_classes,
                             const MlpConfig& config);
  void fit(const Dataset& train);

  std::vector<double> probabilities(const std::vector<double>& row) const;
  int predict(const std::vector<double>& row) const;

  // Mean cross-entropy over a dataset and its analytic gradient, flattened in
  // parameter order (W1, b1, W2, b2). Used by the finite-difference check.
  double loss(const Dataset& data) const;
  std::vector<double> loss_gradient(const Dataset& data) const;
  std::size_t param_count() const;
  double get_param(std::size_t flat_index) const;
  void set_param(std::size_t flat_index, double value);

  std::size_t hidden_size() const { return b1_.size(); }
  const MlpConfig& config() const { return config_; }

  void save(std::ostream& out) const;
  static MlpModel load(std::istream& in);

 private:
  struct Activations {
    std::vector<double> hidden;
    std::vector<double> output;
  };
  Activations forward(const std::vector<double>& row) const;

  std::size_t n_features_ = 0;
  std::size_t n_classes_ = 0;
  std::vector<double> w1_;  // hidden x features, row-major
  std::vector<double> b1_;
  std::vector<double> w2_;  // classes x hidden, row-major
  std::vector<double> b2_;
  MlpConfig config_;
};

}  // namespace engage::classify
