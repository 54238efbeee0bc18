#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace engage::select {

struct BinEdges {
  double low = 0.0;   // mean - stddev
  double high = 0.0;  // mean + stddev
};

struct DiscretizedColumn {
  std::vector<std::uint8_t> states;  // 0, 1 or 2
  BinEdges edges;
};

// 3-state discretization at mean +- stddev (population stddev). A
// zero-variance column lands entirely in the middle bin.
DiscretizedColumn discretize(std::span<const double> column);

// Column-wise discretization of a sample-major matrix.
struct DiscretizedMatrix {
  std::size_t n_samples = 0;
  std::vector<std::vector<std::uint8_t>> columns;  // feature-major
  std::vector<BinEdges> edges;
};

DiscretizedMatrix discretize_matrix(const std::vector<std::vector<double>>& rows,
                                    std::size_t n_features);

}  // namespace engage::select
