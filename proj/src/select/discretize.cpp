#include "engage/select/discretize.hpp"

#include <cmath>
#include <stdexcept>

namespace engage::select {

DiscretizedColumn discretize(std::span<const double> column) {
  if (column.size() < 2) throw std::invalid_argument("discretize needs >= 2 samples");
  const double n = static_cast<double>(column.size());
  double mean = 0.0;
  for (double v : column) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : column) var += (v - mean) * (v - mean);
  var /= n;
  const double sd = std::sqrt(var);

  DiscretizedColumn out;
  out.edges = {mean - sd, mean + sd};
  out.states.reserve(column.size());
  for (double v : column) {
    std::uint8_t s = 1;
    if (sd > 0.0) {
      if (v < out.edges.low) {
        s = 0;
      } else if (v > out.edges.high) {
        s = 2;
      }
    }
    out.states.push_back(s);
  }
  return out;
}

DiscretizedMatrix discretize_matrix(const std::vector<std::vector<double>>& rows,
                                    std::size_t n_features) {
  DiscretizedMatrix m;
  m.n_samples = rows.size();
  m.columns.resize(n_features);
  m.edges.resize(n_features);
  std::vector<double> column(rows.size());
  for (std::size_t f = 0; f < n_features; ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i].at(f);
    DiscretizedColumn d = discretize(column);
    m.columns[f] = std::move(d.states);
    m.edges[f] = d.edges;
  }
  return m;
}

}  // namespace engage::select
