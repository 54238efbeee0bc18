#include "engage/classify/standardize.hpp"

#include <cmath>
#include <stdexcept>

namespace engage::classify {

Dataset Dataset::select_columns(const std::vector<std::size_t>& columns) const {
  Dataset out;
  out.labels = labels;
  out.n_classes = n_classes;
  out.rows.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> r;
    r.reserve(columns.size());
    for (std::size_t c : columns) r.push_back(row.at(c));
    out.rows.push_back(std::move(r));
  }
  return out;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& indices) const {
  Dataset out;
  out.n_classes = n_classes;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.rows.push_back(rows.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

Standardizer Standardizer::fit(const Dataset& train) {
  if (train.rows.empty()) throw std::invalid_argument("cannot fit standardizer on empty set");
  const std::size_t d = train.n_features();
  const double n = static_cast<double>(train.rows.size());
  Standardizer s;
  s.mean_.assign(d, 0.0);
  s.stddev_.assign(d, 0.0);
  for (const auto& row : train.rows) {
    for (std::size_t j = 0; j < d; ++j) s.mean_[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) s.mean_[j] /= n;
  for (const auto& row : train.rows) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = row[j] - s.mean_[j];
      s.stddev_[j] += dev * dev;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    s.stddev_[j] = std::sqrt(s.stddev_[j] / n);
    if (s.stddev_[j] < 1e-12) s.stddev_[j] = 1e-12;
  }
  return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& row) const {
  if (row.size() != mean_.size()) throw std::invalid_argument("standardizer arity mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean_[j]) / stddev_[j];
  return out;
}

Dataset Standardizer::apply(const Dataset& data) const {
  Dataset out;
  out.labels = data.labels;
  out.n_classes = data.n_classes;
  out.rows.reserve(data.rows.size());
  for (const auto& row : data.rows) out.rows.push_back(apply(row));
  return out;
}

}  // namespace engage::classify
