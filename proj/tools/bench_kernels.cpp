// Compares the OpenMP kernels against their serial references on synthetic
// workloads: MRMR candidate scoring and fold-parallel cross validation.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "engage/classify/crossval.hpp"
#include "engage/select/mrmr.hpp"

using namespace engage;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

select::DiscretizedMatrix random_matrix(std::size_t n_samples, std::size_t n_features,
                                        std::vector<std::uint8_t>& labels,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> state(0, 2);
  std::uniform_int_distribution<int> cls(0, 4);
  select::DiscretizedMatrix m;
  m.n_samples = n_samples;
  m.columns.assign(n_features, std::vector<std::uint8_t>(n_samples));
  m.edges.assign(n_features, {});
  for (auto& col : m.columns) {
    for (auto& v : col) v = static_cast<std::uint8_t>(state(rng));
  }
  labels.resize(n_samples);
  for (auto& l : labels) l = static_cast<std::uint8_t>(cls(rng));
  return m;
}

classify::Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> cls(0, 2);
  classify::Dataset data;
  data.n_classes = 3;
  data.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cls(rng);
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = noise(rng) + (j % 3 == c % 3 ? 1.5 : 0.0);
    data.rows.push_back(std::move(row));
    data.labels.push_back(c);
  }
  return data;
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());

  {
    std::vector<std::uint8_t> labels;
    const auto matrix = random_matrix(20000, 64, labels, 42);
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = select::mrmr_rank_serial(matrix, labels, 64);
    const double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto parallel = select::mrmr_rank(matrix, labels, 64);
    const double tp = seconds_since(t0);
    bool same = serial.entries.size() == parallel.entries.size();
    for (std::size_t i = 0; same && i < serial.entries.size(); ++i) {
      same = serial.entries[i].feature == parallel.entries[i].feature;
    }
    std::printf("mrmr_rank   20000x64  serial %7.3fs  openmp %7.3fs  speedup %.2fx  %s\n",
                ts, tp, ts / tp, same ? "identical" : "MISMATCH");
  }

  {
    const auto data = random_dataset(20000, 32, 7);
    classify::CrossValConfig cv;
    cv.k = 10;
    cv.seed = 7;
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = classify::cross_validate_serial(data, cv);
    const double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto parallel = classify::cross_validate(data, cv);
    const double tp = seconds_since(t0);
    const bool same = serial.pooled.confusion == parallel.pooled.confusion;
    std::printf("cross_val   20000x32  serial %7.3fs  openmp %7.3fs  speedup %.2fx  %s\n",
                ts, tp, ts / tp, same ? "identical" : "MISMATCH");
  }
  return 0;
}
