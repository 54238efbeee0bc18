#pragma once

#include <cstdint>
#include <vector>

namespace engage::classify {

// Sample-major numeric dataset with integer class labels.
struct Dataset {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::size_t n_classes = 0;

  std::size_t size() const { return rows.size(); }
  std::size_t n_features() const { return rows.empty() ? 0 : rows.front().size(); }

  Dataset select_columns(const std::vector<std::size_t>& columns) const;
  Dataset select_rows(const std::vector<std::size_t>& indices) const;
};

}  // namespace engage::classify
