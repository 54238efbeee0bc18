#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "engage/classify/crossval.hpp"
#include "engage/classify/kfold.hpp"
#include "engage/classify/metrics.hpp"
#include "engage/classify/mlp.hpp"
#include "engage/classify/standardize.hpp"
#include "engage/classify/svm.hpp"

using namespace engage;
using namespace engage::classify;

namespace {

std::vector<int> labels_from_counts(const std::vector<std::size_t>& counts) {
  std::vector<int> labels;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    labels.insert(labels.end(), counts[c], static_cast<int>(c));
  }
  return labels;
}

Dataset blobs_2d(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.75, 0.75);
  Dataset data;
  data.n_classes = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 2);
    const double cx = cls == 0 ? -2.0 : 2.0;
    data.rows.push_back({cx + jitter(rng), jitter(rng)});
    data.labels.push_back(cls);
  }
  return data;
}

Dataset xor_data() {
  Dataset d;
  d.n_classes = 2;
  d.rows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  d.labels = {0, 1, 1, 0};
  return d;
}

}  // namespace

TEST_CASE("stratified_kfold") {
  SUBCASE("exact division: 100 samples, k=10, nothing aside") {
    const auto labels = labels_from_counts({100});
    const FoldPlan plan = stratified_kfold(labels, 10, 1);
    CHECK(plan.folds.size() == 10);
    for (const auto& fold : plan.folds) CHECK(fold.size() == 10);
    CHECK(plan.aside.empty());
    CHECK(plan.test_size() == 10);
    CHECK(plan.train_size() == 90);
  }
  SUBCASE("counts {25, 13} with k=4: folds get {6, 3}, aside {1, 1}") {
    const auto labels = labels_from_counts({25, 13});
    const FoldPlan plan = stratified_kfold(labels, 4, 1);
    REQUIRE(plan.folds.size() == 4);
    for (const auto& fold : plan.folds) CHECK(fold.size() == 9);
    CHECK(plan.aside.size() == 2);
    CHECK(plan.per_class_leftover[0] == 1);
    CHECK(plan.per_class_leftover[1] == 1);
    // Per-class counts inside each fold.
    for (const auto& fold : plan.folds) {
      std::size_t c0 = 0;
      for (std::size_t idx : fold) c0 += labels[idx] == 0 ? 1 : 0;
      CHECK(c0 == 6);
      CHECK(fold.size() - c0 == 3);
    }
  }
  SUBCASE("class smaller than k is rejected") {
    const auto labels = labels_from_counts({30, 5});
    CHECK_THROWS_AS(stratified_kfold(labels, 10, 1), std::invalid_argument);
  }
  SUBCASE("folds and aside partition all indices") {
    const auto labels = labels_from_counts({41, 27, 88, 13});
    const FoldPlan plan = stratified_kfold(labels, 5, 9);
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (const auto& fold : plan.folds) {
      for (std::size_t idx : fold) {
        CHECK(seen.insert(idx).second);
        ++total;
      }
    }
    for (std::size_t idx : plan.aside) {
      CHECK(seen.insert(idx).second);
      ++total;
    }
    CHECK(total == labels.size());
    CHECK(plan.train_indices(0).size() == plan.train_size());
  }
  SUBCASE("corpus-scale bookkeeping under the truncation rule") {
    // With a handful of classes the per-class leftovers are bounded by
    // count mod k each, so the aside stays under classes*(k-1) and the
    // train/test sizes keep an exact (k-1):1 ratio.
    const std::vector<std::size_t> counts{87010, 31640, 9492, 20566, 9492};
    std::size_t sum = 0;
    for (auto c : counts) sum += c;
    REQUIRE(sum == 158200);
    const auto labels = labels_from_counts(counts);
    const FoldPlan plan = stratified_kfold(labels, 10, 7);
    CHECK(plan.train_size() == 9 * plan.test_size());
    CHECK(plan.aside_size() <= counts.size() * 9);
    std::size_t expected_aside = 0;
    std::size_t expected_test = 0;
    for (auto c : counts) {
      expected_aside += c % 10;
      expected_test += c / 10;
    }
    CHECK(plan.aside_size() == expected_aside);
    CHECK(plan.test_size() == expected_test);
  }
}

TEST_CASE("standardizer") {
  SUBCASE("train {0,2}: mean 1, sigma 1, 3 maps to 2") {
    Dataset train;
    train.rows = {{0.0}, {2.0}};
    train.labels = {0, 1};
    train.n_classes = 2;
    const Standardizer s = Standardizer::fit(train);
    CHECK(s.mean()[0] == doctest::Approx(1.0));
    CHECK(s.stddev()[0] == doctest::Approx(1.0));
    CHECK(s.apply(std::vector<double>{3.0})[0] == doctest::Approx(2.0));
  }
  SUBCASE("constant feature standardizes to zero") {
    Dataset train;
    train.rows = {{5.0, 1.0}, {5.0, 3.0}};
    train.labels = {0, 1};
    train.n_classes = 2;
    const Standardizer s = Standardizer::fit(train);
    for (const auto& row : s.apply(train).rows) CHECK(row[0] == doctest::Approx(0.0));
  }
  SUBCASE("training columns end up zero-mean") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> val(5.0, 3.0);
    Dataset train;
    train.n_classes = 2;
    for (int i = 0; i < 100; ++i) {
      train.rows.push_back({val(rng), val(rng)});
      train.labels.push_back(i % 2);
    }
    const Dataset scaled = Standardizer::fit(train).apply(train);
    for (std::size_t j = 0; j < 2; ++j) {
      double mean = 0.0;
      for (const auto& row : scaled.rows) mean += row[j];
      mean /= static_cast<double>(scaled.rows.size());
      CHECK(std::abs(mean) < 1e-9);
    }
  }
}

TEST_CASE("svm") {
  SUBCASE("separable blobs reach full training accuracy") {
    const Dataset data = blobs_2d(200, 11);
    SvmConfig config;
    const SvmModel model = SvmModel::train(data, config);
    int correct = 0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
      correct += model.predict(data.rows[i]) == data.labels[i] ? 1 : 0;
    }
    CHECK(correct == 200);
  }
  SUBCASE("same data and seed give identical weights") {
    const Dataset data = blobs_2d(100, 5);
    SvmConfig config;
    config.seed = 123;
    const SvmModel a = SvmModel::train(data, config);
    const SvmModel b = SvmModel::train(data, config);
    CHECK(a.weights() == b.weights());
    CHECK(a.biases() == b.biases());
  }
  SUBCASE("single-class training set is rejected") {
    Dataset data;
    data.rows = {{1.0}, {2.0}};
    data.labels = {0, 0};
    data.n_classes = 2;
    CHECK_THROWS_AS(SvmModel::train(data, {}), std::invalid_argument);
  }
  SUBCASE("adding a constant to every class score keeps the argmax") {
    const Dataset data = blobs_2d(60, 2);
    const SvmModel model = SvmModel::train(data, {});
    for (const auto& row : data.rows) {
      std::vector<double> s = model.scores(row);
      const auto base = std::max_element(s.begin(), s.end()) - s.begin();
      for (double& v : s) v += 3.7;
      const auto shifted = std::max_element(s.begin(), s.end()) - s.begin();
      CHECK(base == shifted);
    }
  }
  SUBCASE("model file round-trip") {
    const Dataset data = blobs_2d(80, 4);
    const SvmModel model = SvmModel::train(data, {});
    std::stringstream ss;
    model.save(ss);
    const SvmModel loaded = SvmModel::load(ss);
    for (const auto& row : data.rows) CHECK(model.predict(row) == loaded.predict(row));
  }
}

TEST_CASE("mlp") {
  SUBCASE("xor is learned exactly") {
    MlpConfig config;
    config.hidden = 4;
    config.epochs = 5000;
    config.seed = 1;
    const MlpModel model = MlpModel::train(xor_data(), config);
    const Dataset d = xor_data();
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      CHECK(model.predict(d.rows[i]) == d.labels[i]);
    }
  }
  SUBCASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> val(0.0, 1.0);
    Dataset data;
    data.n_classes = 3;
    for (int i = 0; i < 12; ++i) {
      data.rows.push_back({val(rng), val(rng), val(rng), val(rng)});
      data.labels.push_back(i % 3);
    }
    MlpConfig config;
    config.hidden = 5;
    config.seed = 77;
    MlpModel model = MlpModel::initialize(4, 3, config);
    const std::vector<double> grad = model.loss_gradient(data);

    std::uniform_int_distribution<std::size_t> pick(0, model.param_count() - 1);
    const double h = 1e-6;
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t p = pick(rng);
      const double w0 = model.get_param(p);
      model.set_param(p, w0 + h);
      const double up = model.loss(data);
      model.set_param(p, w0 - h);
      const double down = model.loss(data);
      model.set_param(p, w0);
      const double numeric = (up - down) / (2.0 * h);
      const double denom = std::max({std::abs(numeric), std::abs(grad[p]), 1e-8});
      CHECK(std::abs(numeric - grad[p]) / denom < 1e-4);
    }
  }
  SUBCASE("softmax outputs normalize and stay inside [0, 1]") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> val(0.0, 2.0);
    MlpConfig config;
    config.hidden = 6;
    config.seed = 3;
    const MlpModel model = MlpModel::initialize(5, 4, config);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> row(5);
      for (double& v : row) v = val(rng);
      const std::vector<double> p = model.probabilities(row);
      double sum = 0.0;
      for (double v : p) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
  SUBCASE("same data and seed give identical parameters") {
    MlpConfig config;
    config.hidden = 4;
    config.epochs = 200;
    config.seed = 9;
    const Dataset d = blobs_2d(60, 21);
    MlpModel a = MlpModel::train(d, config);
    MlpModel b = MlpModel::train(d, config);
    REQUIRE(a.param_count() == b.param_count());
    for (std::size_t p = 0; p < a.param_count(); ++p) {
      CHECK(a.get_param(p) == b.get_param(p));
    }
  }
  SUBCASE("model file round-trip") {
    MlpConfig config;
    config.hidden = 4;
    config.epochs = 100;
    const Dataset d = blobs_2d(40, 30);
    const MlpModel model = MlpModel::train(d, config);
    std::stringstream ss;
    model.save(ss);
    const MlpModel loaded = MlpModel::load(ss);
    for (const auto& row : d.rows) CHECK(model.predict(row) == loaded.predict(row));
  }
}

TEST_CASE("metrics") {
  SUBCASE("perfect predictor") {
    const std::vector<int> truth{0, 1, 2, 0, 1, 2};
    const Metrics m = evaluate(truth, truth, 3);
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(m.precision[c] == doctest::Approx(1.0));
      CHECK(m.recall[c] == doctest::Approx(1.0));
    }
    CHECK(m.accuracy() == doctest::Approx(1.0));
  }
  SUBCASE("confusion [[8,2],[1,9]]") {
    const Metrics m = metrics_from_confusion({{8, 2}, {1, 9}});
    CHECK(m.precision[0] == doctest::Approx(8.0 / 9.0));
    CHECK(m.recall[0] == doctest::Approx(0.8));
    CHECK(m.precision[1] == doctest::Approx(9.0 / 11.0));
    CHECK(m.recall[1] == doctest::Approx(0.9));
    CHECK(m.support[0] == 10);
  }
  SUBCASE("a class never predicted scores zero by convention") {
    const std::vector<int> truth{0, 0, 1, 1};
    const std::vector<int> predicted{0, 0, 0, 0};
    const Metrics m = evaluate(truth, predicted, 2);
    CHECK(m.precision[1] == 0.0);
    CHECK(m.recall[1] == 0.0);
  }
  SUBCASE("row sums equal class supports") {
    const Metrics m = metrics_from_confusion({{5, 1, 0}, {2, 7, 1}, {0, 0, 4}});
    CHECK(m.support[0] == 6);
    CHECK(m.support[1] == 10);
    CHECK(m.support[2] == 4);
  }
}

TEST_CASE("cross-validation") {
  // Three noisy classes in 4 dimensions.
  std::mt19937_64 rng(51);
  std::normal_distribution<double> noise(0.0, 0.8);
  Dataset data;
  data.n_classes = 3;
  for (int i = 0; i < 300; ++i) {
    const int c = i % 3;
    std::vector<double> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = noise(rng) + (static_cast<int>(j) == c ? 2.0 : 0.0);
    data.rows.push_back(std::move(row));
    data.labels.push_back(c);
  }

  CrossValConfig config;
  config.k = 5;
  config.seed = 7;

  SUBCASE("parallel and serial runs pool to identical confusions") {
    const CrossValResult a = cross_validate(data, config);
    const CrossValResult b = cross_validate_serial(data, config);
    CHECK(a.pooled.confusion == b.pooled.confusion);
  }
  SUBCASE("pooled support covers every fold exactly once") {
    const CrossValResult r = cross_validate(data, config);
    std::size_t total = 0;
    for (std::size_t s : r.pooled.support) total += s;
    CHECK(total == r.plan.test_size() * config.k);
  }
  SUBCASE("a learnable problem scores well above chance") {
    const CrossValResult r = cross_validate(data, config);
    CHECK(r.pooled.accuracy() > 0.8);
  }
}
