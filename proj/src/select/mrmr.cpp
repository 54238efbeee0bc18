#include "engage/select/mrmr.hpp"

#include <limits>
#include <stdexcept>

#include "engage/select/mutual_info.hpp"

namespace engage::select {

const char* to_string(MrmrScheme s) { return s == MrmrScheme::MID ? "mid" : "miq"; }

std::optional<MrmrScheme> mrmr_scheme_from_string(std::string_view s) {
  if (s == "mid") return MrmrScheme::MID;
  if (s == "miq") return MrmrScheme::MIQ;
  return std::nullopt;
}

namespace {

MrmrRanking rank_impl(const DiscretizedMatrix& matrix, std::span<const std::uint8_t> labels,
                      std::size_t k, MrmrScheme scheme, bool parallel) {
  const std::size_t n_features = matrix.columns.size();
  if (k > n_features) throw std::invalid_argument("k exceeds feature count");
  if (labels.size() != matrix.n_samples) {
    throw std::invalid_argument("label column length mismatch");
  }

  const auto n = static_cast<std::ptrdiff_t>(n_features);
  std::vector<double> relevance(n_features, 0.0);
#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    relevance[f] = mutual_information(matrix.columns[f], labels);
  }

  std::vector<bool> selected(n_features, false);
  std::vector<double> redundancy_sum(n_features, 0.0);
  MrmrRanking ranking;
  ranking.scheme = scheme;
  ranking.entries.reserve(k);

  for (std::size_t step = 0; step < k; ++step) {
    if (step > 0) {
      const std::size_t last = ranking.entries.back().feature;
#pragma omp parallel for if (parallel) schedule(static)
      for (std::ptrdiff_t f = 0; f < n; ++f) {
        if (!selected[f]) {
          redundancy_sum[f] += mutual_information(matrix.columns[f], matrix.columns[last]);
        }
      }
    }

    double best_score = -std::numeric_limits<double>::infinity();
    std::size_t best_feature = n_features;
    for (std::size_t f = 0; f < n_features; ++f) {
      if (selected[f]) continue;
      double score = relevance[f];
      if (step > 0) {
        const double mean_red = redundancy_sum[f] / static_cast<double>(step);
        if (scheme == MrmrScheme::MID) {
          score = relevance[f] - mean_red;
        } else {
          score = relevance[f] / (mean_red > kMiqEpsilon ? mean_red : kMiqEpsilon);
        }
      }
      if (score > best_score) {  // ties keep the lower feature index
        best_score = score;
        best_feature = f;
      }
    }
    selected[best_feature] = true;
    ranking.entries.push_back({best_feature, best_score});
  }
  return ranking;
}

}  // namespace

MrmrRanking mrmr_rank(const DiscretizedMatrix& matrix, std::span<const std::uint8_t> labels,
                      std::size_t k, MrmrScheme scheme) {
  return rank_impl(matrix, labels, k, scheme, true);
}

MrmrRanking mrmr_rank_serial(const DiscretizedMatrix& matrix,
                             std::span<const std::uint8_t> labels, std::size_t k,
                             MrmrScheme scheme) {
  return rank_impl(matrix, labels, k, scheme, false);
}

}  // namespace engage::select
