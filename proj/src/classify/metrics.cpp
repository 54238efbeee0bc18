#include "engage/classify/metrics.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace engage::classify {

Metrics metrics_from_confusion(const std::vector<std::vector<std::size_t>>& confusion) {
  const std::size_t n = confusion.size();
  Metrics m;
  m.confusion = confusion;
  m.precision.assign(n, 0.0);
  m.recall.assign(n, 0.0);
  m.support.assign(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t tp = confusion[c][c];
    std::size_t actual = 0;
    std::size_t predicted = 0;
    for (std::size_t o = 0; o < n; ++o) {
      actual += confusion[c][o];
      predicted += confusion[o][c];
    }
    m.support[c] = actual;
    m.precision[c] = predicted == 0 ? 0.0 : static_cast<double>(tp) / predicted;
    m.recall[c] = actual == 0 ? 0.0 : static_cast<double>(tp) / actual;
  }
  return m;
}

Metrics evaluate(const std::vector<int>& truth, const std::vector<int>& predicted,
                 std::size_t n_classes) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("metrics length mismatch");
  if (truth.empty()) throw std::invalid_argument("metrics on empty test set");
  std::vector<std::vector<std::size_t>> confusion(n_classes,
                                                  std::vector<std::size_t>(n_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    confusion.at(truth[i]).at(predicted[i]) += 1;
  }
  return metrics_from_confusion(confusion);
}

double Metrics::macro_precision() const {
  double sum = 0.0;
  for (double p : precision) sum += p;
  return precision.empty() ? 0.0 : sum / precision.size();
}

double Metrics::macro_recall() const {
  double sum = 0.0;
  for (double r : recall) sum += r;
  return recall.empty() ? 0.0 : sum / recall.size();
}

double Metrics::accuracy() const {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t c = 0; c < confusion.size(); ++c) {
    correct += confusion[c][c];
    for (std::size_t o = 0; o < confusion.size(); ++o) total += confusion[c][o];
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

void print_metrics(std::ostream& out, const Metrics& m,
                   const std::vector<std::string>& class_names) {
  out << std::left << std::setw(18) << "Class" << std::setw(11) << "Precision"
      << std::setw(11) << "Recall" << "Support\n";
  for (std::size_t c = 0; c < m.precision.size(); ++c) {
    const std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
    out << std::left << std::setw(18) << name << std::fixed << std::setprecision(2)
        << std::setw(11) << m.precision[c] << std::setw(11) << m.recall[c]
        << m.support[c] << '\n';
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace engage::classify
