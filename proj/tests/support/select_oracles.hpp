#pragma once

// Brute-force reference implementations for the feature-selection tests. These
// recompute everything from raw counts at every call and share no code with
// the library path they check.

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "engage/select/discretize.hpp"
#include "engage/select/mrmr.hpp"

namespace oracle {

inline double mi_bruteforce(const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& y) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> px;
  std::map<int, double> py;
  for (std::size_t i = 0; i < x.size(); ++i) {
    joint[{x[i], y[i]}] += 1.0;
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
  }
  const double n = static_cast<double>(x.size());
  double info = 0.0;
  for (const auto& [cell, count] : joint) {
    const double pxy = count / n;
    info += pxy * std::log2(pxy / ((px[cell.first] / n) * (py[cell.second] / n)));
  }
  return info;
}

// One greedy step evaluated from scratch over all remaining candidates.
inline std::size_t greedy_step_bruteforce(const engage::select::DiscretizedMatrix& m,
                                          const std::vector<std::uint8_t>& labels,
                                          const std::vector<std::size_t>& selected,
                                          engage::select::MrmrScheme scheme) {
  double best = -1e300;
  std::size_t best_feature = m.columns.size();
  for (std::size_t f = 0; f < m.columns.size(); ++f) {
    bool taken = false;
    for (std::size_t s : selected) taken |= s == f;
    if (taken) continue;
    const double relevance = mi_bruteforce(m.columns[f], labels);
    double score = relevance;
    if (!selected.empty()) {
      double red = 0.0;
      for (std::size_t s : selected) red += mi_bruteforce(m.columns[f], m.columns[s]);
      red /= static_cast<double>(selected.size());
      if (scheme == engage::select::MrmrScheme::MID) {
        score = relevance - red;
      } else {
        score = relevance / (red > engage::select::kMiqEpsilon
                                 ? red
                                 : engage::select::kMiqEpsilon);
      }
    }
    if (score > best) {
      best = score;
      best_feature = f;
    }
  }
  return best_feature;
}

}  // namespace oracle
