#include "engage/classify/kfold.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace engage::classify {

std::vector<std::size_t> FoldPlan::train_indices(std::size_t test_fold) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f == test_fold) continue;
    out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  return out;
}

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  int max_class = 0;
  for (const auto& [cls, idx] : by_class) {
    if (idx.size() < k) {
      throw std::invalid_argument("class " + std::to_string(cls) + " has " +
                                  std::to_string(idx.size()) + " samples, fewer than k=" +
                                  std::to_string(k));
    }
    max_class = std::max(max_class, cls);
  }

  FoldPlan plan;
  plan.k = k;
  plan.folds.assign(k, {});
  plan.per_class_leftover.assign(static_cast<std::size_t>(max_class) + 1, 0);

  std::mt19937_64 rng(seed);
  for (auto& [cls, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t usable = (idx.size() / k) * k;
    for (std::size_t i = 0; i < usable; ++i) plan.folds[i % k].push_back(idx[i]);
    for (std::size_t i = usable; i < idx.size(); ++i) plan.aside.push_back(idx[i]);
    plan.per_class_leftover[static_cast<std::size_t>(cls)] = idx.size() - usable;
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  std::sort(plan.aside.begin(), plan.aside.end());
  return plan;
}

}  // namespace engage::classify
