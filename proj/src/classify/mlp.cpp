#include "engage/classify/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

namespace engage::classify {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

}  // namespace

MlpModel MlpModel::initialize(std::size_t n_features, std::size_t n_classes,
                              const MlpConfig& config) {
  MlpModel m;
  m.config_ = config;
  m.n_features_ = n_features;
  m.n_classes_ = n_classes;
  const std::size_t hidden =
      config.hidden > 0 ? config.hidden : (n_features + n_classes + 1) / 2;
  m.w1_.resize(hidden * n_features);
  m.b1_.assign(hidden, 0.0);
  m.w2_.resize(n_classes * hidden);
  m.b2_.assign(n_classes, 0.0);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  for (double& w : m.w1_) w = dist(rng);
  for (double& w : m.w2_) w = dist(rng);
  return m;
}

MlpModel MlpModel::train(const Dataset& train, const MlpConfig& config) {
  if (train.rows.empty()) throw std::invalid_argument("empty training set");
  const std::set<int> present(train.labels.begin(), train.labels.end());
  if (present.size() < 2) throw std::invalid_argument("training set has a single class");
  const std::size_t n_classes =
      train.n_classes > 0 ? train.n_classes : static_cast<std::size_t>(*present.rbegin()) + 1;
  MlpModel m = initialize(train.n_features(), n_classes, config);
  m.fit(train);
  return m;
}

void MlpModel::fit(const Dataset& train) {
  const std::size_t n = train.rows.size();
  const std::size_t d = n_features_;
  const std::size_t h = b1_.size();
  const std::size_t c = n_classes_;

  std::vector<double> vw1(w1_.size(), 0.0), vb1(b1_.size(), 0.0);
  std::vector<double> vw2(w2_.size(), 0.0), vb2(b2_.size(), 0.0);
  std::vector<double> dz1(h), da1(h);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config_.seed + 0x9e3779b97f4a7c15ull);
  const double lr = config_.learning_rate;
  const double mu = config_.momentum;

  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const std::vector<double>& x = train.rows[i];
      const int y = train.labels[i];
      Activations act = forward(x);

      // output delta: softmax + cross-entropy
      std::vector<double>& dz2 = act.output;
      dz2[static_cast<std::size_t>(y)] -= 1.0;

      for (std::size_t j = 0; j < h; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < c; ++k) acc += w2_[k * h + j] * dz2[k];
        da1[j] = acc;
        dz1[j] = acc * act.hidden[j] * (1.0 - act.hidden[j]);
      }

      for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t j = 0; j < h; ++j) {
          double& v = vw2[k * h + j];
          v = mu * v - lr * dz2[k] * act.hidden[j];
          w2_[k * h + j] += v;
        }
        double& vb = vb2[k];
        vb = mu * vb - lr * dz2[k];
        b2_[k] += vb;
      }
      for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t f = 0; f < d; ++f) {
          double& v = vw1[j * d + f];
          v = mu * v - lr * dz1[j] * x[f];
          w1_[j * d + f] += v;
        }
        double& vb = vb1[j];
        vb = mu * vb - lr * dz1[j];
        b1_[j] += vb;
      }
    }
  }
}

MlpModel::Activations MlpModel::forward(const std::vector<double>& row) const {
  const std::size_t d = n_features_;
  const std::size_t h = b1_.size();
  const std::size_t c = n_classes_;
  Activations act;
  act.hidden.resize(h);
  for (std::size_t j = 0; j < h; ++j) {
    double z = b1_[j];
    for (std::size_t f = 0; f < d; ++f) z += w1_[j * d + f] * row[f];
    act.hidden[j] = sigmoid(z);
  }
  act.output.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    double z = b2_[k];
    for (std::size_t j = 0; j < h; ++j) z += w2_[k * h + j] * act.hidden[j];
    act.output[k] = z;
  }
  softmax_inplace(act.output);
  return act;
}

std::vector<double> MlpModel::probabilities(const std::vector<double>& row) const {
  return forward(row).output;
}

int MlpModel::predict(const std::vector<double>& row) const {
  const std::vector<double> p = probabilities(row);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double MlpModel::loss(const Dataset& data) const {
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const std::vector<double> p = probabilities(data.rows[i]);
    total -= std::log(std::max(p[static_cast<std::size_t>(data.labels[i])], 1e-300));
  }
  return total / static_cast<double>(data.rows.size());
}

std::vector<double> MlpModel::loss_gradient(const Dataset& data) const {
  const std::size_t d = n_features_;
  const std::size_t h = b1_.size();
  const std::size_t c = n_classes_;
  std::vector<double> grad(param_count(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(data.rows.size());

  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const std::vector<double>& x = data.rows[i];
    Activations act = forward(x);
    std::vector<double>& dz2 = act.output;
    dz2[static_cast<std::size_t>(data.labels[i])] -= 1.0;

    std::size_t off_b1 = h * d;
    std::size_t off_w2 = off_b1 + h;
    std::size_t off_b2 = off_w2 + c * h;
    for (std::size_t j = 0; j < h; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < c; ++k) acc += w2_[k * h + j] * dz2[k];
      const double dz1 = acc * act.hidden[j] * (1.0 - act.hidden[j]);
      for (std::size_t f = 0; f < d; ++f) grad[j * d + f] += inv_n * dz1 * x[f];
      grad[off_b1 + j] += inv_n * dz1;
    }
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t j = 0; j < h; ++j) {
        grad[off_w2 + k * h + j] += inv_n * dz2[k] * act.hidden[j];
      }
      grad[off_b2 + k] += inv_n * dz2[k];
    }
  }
  return grad;
}

std::size_t MlpModel::param_count() const {
  return w1_.size() + b1_.size() + w2_.size() + b2_.size();
}

double MlpModel::get_param(std::size_t flat_index) const {
  if (flat_index < w1_.size()) return w1_[flat_index];
  flat_index -= w1_.size();
  if (flat_index < b1_.size()) return b1_[flat_index];
  flat_index -= b1_.size();
  if (flat_index < w2_.size()) return w2_[flat_index];
  flat_index -= w2_.size();
  return b2_.at(flat_index);
}

void MlpModel::set_param(std::size_t flat_index, double value) {
  if (flat_index < w1_.size()) {
    w1_[flat_index] = value;
    return;
  }
  flat_index -= w1_.size();
  if (flat_index < b1_.size()) {
    b1_[flat_index] = value;
    return;
  }
  flat_index -= b1_.size();
  if (flat_index < w2_.size()) {
    w2_[flat_index] = value;
    return;
  }
  flat_index -= w2_.size();
  b2_.at(flat_index) = value;
}

void MlpModel::save(std::ostream& out) const {
  out.precision(17);
  out << "mlp " << n_features_ << ' ' << b1_.size() << ' ' << n_classes_ << ' '
      << config_.learning_rate << ' ' << config_.momentum << ' ' << config_.epochs << ' '
      << config_.seed << '\n';
  auto dump = [&out](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  };
  dump(w1_);
  dump(b1_);
  dump(w2_);
  dump(b2_);
}

MlpModel MlpModel::load(std::istream& in) {
  std::string tag;
  std::size_t h = 0;
  MlpModel m;
  in >> tag >> m.n_features_ >> h >> m.n_classes_ >> m.config_.learning_rate >>
      m.config_.momentum >> m.config_.epochs >> m.config_.seed;
  if (tag != "mlp") throw std::invalid_argument("not an mlp model file");
  m.config_.hidden = h;
  m.w1_.resize(h * m.n_features_);
  m.b1_.resize(h);
  m.w2_.resize(m.n_classes_ * h);
  m.b2_.resize(m.n_classes_);
  for (auto* vec : {&m.w1_, &m.b1_, &m.w2_, &m.b2_}) {
    for (double& v : *vec) in >> v;
  }
  if (!in) throw std::invalid_argument("truncated mlp model file");
  return m;
}

}  // namespace engage::classify
