#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace engage::classify {

// Stratified fold plan under the truncation scheme: per class the shuffled
// indices are cut to the largest multiple of k and dealt round-robin, so every
// fold holds exactly the same per-class counts; leftovers are set aside.
struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> folds;
  std::vector<std::size_t> aside;              // indices excluded by truncation
  std::vector<std::size_t> per_class_leftover; // leftover count per class id

  std::size_t test_size() const { return folds.empty() ? 0 : folds.front().size(); }
  std::size_t train_size() const { return test_size() * (k - 1); }
  std::size_t aside_size() const { return aside.size(); }

  // All indices not in fold `test_fold` and not set aside.
  std::vector<std::size_t> train_indices(std::size_t test_fold) const;
};

// Throws when k < 2 or any class has fewer than k samples.
FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

}  // namespace engage::classify
