#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace engage::classify {

// Per-class precision/recall over a confusion matrix; 0/0 counts as 0,
// mirroring classes that are never predicted or never present.
struct Metrics {
  std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<std::size_t> support;

  double macro_precision() const;
  double macro_recall() const;
  double accuracy() const;
};

Metrics metrics_from_confusion(const std::vector<std::vector<std::size_t>>& confusion);

Metrics evaluate(const std::vector<int>& truth, const std::vector<int>& predicted,
                 std::size_t n_classes);

// Class / Precision / Recall text table.
void print_metrics(std::ostream& out, const Metrics& m,
                   const std::vector<std::string>& class_names);

}  // namespace engage::classify
