#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "engage/classify/dataset.hpp"
#include "engage/classify/kfold.hpp"
#include "engage/classify/metrics.hpp"
#include "engage/classify/mlp.hpp"
#include "engage/classify/svm.hpp"

namespace engage::classify {

enum class ClassifierKind : std::uint8_t { Svm, Mlp };

const char* to_string(ClassifierKind k);
std::optional<ClassifierKind> classifier_from_string(std::string_view s);

struct CrossValConfig {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  ClassifierKind classifier = ClassifierKind::Svm;
  SvmConfig svm;
  MlpConfig mlp;
};

struct CrossValResult {
  FoldPlan plan;
  Metrics pooled;  // metrics over all test-fold predictions pooled together
};

// Stratified k-fold cross validation; folds train and evaluate in parallel.
CrossValResult cross_validate(const Dataset& data, const CrossValConfig& config);

// Single-thread reference with identical output, kept for tests/benchmarks.
CrossValResult cross_validate_serial(const Dataset& data, const CrossValConfig& config);

}  // namespace engage::classify
