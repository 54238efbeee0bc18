#include "engage/classify/svm.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

namespace engage::classify {

SvmModel SvmModel::train(const Dataset& train, const SvmConfig& config) {
  if (train.rows.empty()) throw std::invalid_argument("empty training set");
  const std::set<int> present(train.labels.begin(), train.labels.end());
  if (present.size() < 2) throw std::invalid_argument("training set has a single class");

  const std::size_t n = train.rows.size();
  const std::size_t d = train.n_features();
  const std::size_t n_classes =
      train.n_classes > 0 ? train.n_classes : static_cast<std::size_t>(*present.rbegin()) + 1;

  SvmModel model;
  model.config_ = config;
  model.weights_.assign(n_classes, std::vector<double>(d, 0.0));
  model.biases_.assign(n_classes, 0.0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t c = 0; c < n_classes; ++c) {
    std::vector<double>& w = model.weights_[c];
    double& b = model.biases_[c];
    std::mt19937_64 rng(config.seed + c);  // per-class stream, reproducible
    long t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) {
        ++t;
        const double eta = 1.0 / (config.lambda * static_cast<double>(t));
        const double y = train.labels[i] == static_cast<int>(c) ? 1.0 : -1.0;
        const std::vector<double>& x = train.rows[i];
        double margin = b;
        for (std::size_t j = 0; j < d; ++j) margin += w[j] * x[j];
        margin *= y;
        const double shrink = 1.0 - eta * config.lambda;
        for (std::size_t j = 0; j < d; ++j) w[j] *= shrink;
        b *= shrink;  // bias as an augmented regularized weight
        if (margin < 1.0) {
          const double step = eta * y;
          for (std::size_t j = 0; j < d; ++j) w[j] += step * x[j];
          b += step;
        }
      }
    }
  }
  return model;
}

std::vector<double> SvmModel::scores(const std::vector<double>& row) const {
  std::vector<double> s(weights_.size(), 0.0);
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    double v = biases_[c];
    const std::vector<double>& w = weights_[c];
    for (std::size_t j = 0; j < w.size(); ++j) v += w[j] * row[j];
    s[c] = v;
  }
  return s;
}

int SvmModel::predict(const std::vector<double>& row) const {
  const std::vector<double> s = scores(row);
  return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

void SvmModel::save(std::ostream& out) const {
  out.precision(17);
  out << "svm " << weights_.size() << ' ' << (weights_.empty() ? 0 : weights_[0].size())
      << ' ' << config_.lambda << ' ' << config_.epochs << ' ' << config_.seed << '\n';
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    out << biases_[c];
    for (double w : weights_[c]) out << ' ' << w;
    out << '\n';
  }
}

SvmModel SvmModel::load(std::istream& in) {
  std::string tag;
  std::size_t n_classes = 0;
  std::size_t d = 0;
  SvmModel model;
  in >> tag >> n_classes >> d >> model.config_.lambda >> model.config_.epochs >>
      model.config_.seed;
  if (tag != "svm") throw std::invalid_argument("not an svm model file");
  model.weights_.assign(n_classes, std::vector<double>(d, 0.0));
  model.biases_.assign(n_classes, 0.0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    in >> model.biases_[c];
    for (std::size_t j = 0; j < d; ++j) in >> model.weights_[c][j];
  }
  if (!in) throw std::invalid_argument("truncated svm model file");
  return model;
}

}  // namespace engage::classify
