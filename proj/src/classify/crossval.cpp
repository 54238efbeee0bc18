#include "engage/classify/crossval.hpp"

#include "engage/classify/standardize.hpp"

namespace engage::classify {

const char* to_string(ClassifierKind k) { return k == ClassifierKind::Svm ? "svm" : "mlp"; }

std::optional<ClassifierKind> classifier_from_string(std::string_view s) {
  if (s == "svm") return ClassifierKind::Svm;
  if (s == "mlp") return ClassifierKind::Mlp;
  return std::nullopt;
}

namespace {

CrossValResult run(const Dataset& data, const CrossValConfig& config, bool parallel) {
  CrossValResult result;
  result.plan = stratified_kfold(data.labels, config.k, config.seed);
  const std::size_t n_classes = data.n_classes;

  struct FoldOutcome {
    std::vector<int> truth;
    std::vector<int> predicted;
  };
  std::vector<FoldOutcome> outcomes(config.k);

  const auto k = static_cast<std::ptrdiff_t>(config.k);
#pragma omp parallel for if (parallel) schedule(dynamic)
  for (std::ptrdiff_t f = 0; f < k; ++f) {
    const auto fold = static_cast<std::size_t>(f);
    Dataset train = data.select_rows(result.plan.train_indices(fold));
    Dataset test = data.select_rows(result.plan.folds[fold]);
    const Standardizer scaler = Standardizer::fit(train);
    train = scaler.apply(train);
    test = scaler.apply(test);

    FoldOutcome& out = outcomes[fold];
    out.truth = test.labels;
    out.predicted.reserve(test.rows.size());
    if (config.classifier == ClassifierKind::Svm) {
      const SvmModel model = SvmModel::train(train, config.svm);
      for (const auto& row : test.rows) out.predicted.push_back(model.predict(row));
    } else {
      const MlpModel model = MlpModel::train(train, config.mlp);
      for (const auto& row : test.rows) out.predicted.push_back(model.predict(row));
    }
  }

  // Pool all test-fold predictions before computing the metrics.
  std::vector<int> truth;
  std::vector<int> predicted;
  for (const FoldOutcome& out : outcomes) {
    truth.insert(truth.end(), out.truth.begin(), out.truth.end());
    predicted.insert(predicted.end(), out.predicted.begin(), out.predicted.end());
  }
  result.pooled = evaluate(truth, predicted, n_classes);
  return result;
}

}  // namespace

CrossValResult cross_validate(const Dataset& data, const CrossValConfig& config) {
  return run(data, config, true);
}

CrossValResult cross_validate_serial(const Dataset& data, const CrossValConfig& config) {
  return run(data, config, false);
}

}  // namespace engage::classify
