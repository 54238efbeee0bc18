#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "engage/select/discretize.hpp"

namespace engage::select {

enum class MrmrScheme : std::uint8_t { MID, MIQ };

const char* to_string(MrmrScheme s);
std::optional<MrmrScheme> mrmr_scheme_from_string(std::string_view s);

struct MrmrEntry {
  std::size_t feature = 0;
  double score = 0.0;
};

struct MrmrRanking {
  std::vector<MrmrEntry> entries;
  MrmrScheme scheme = MrmrScheme::MID;
};

inline constexpr double kMiqEpsilon = 1e-12;

// Greedy forward selection of k features: the first maximizes relevance to the
// label, later steps maximize relevance minus (MID) or over (MIQ) the mean
// redundancy against the already selected set. Candidate scoring at each step
// runs data-parallel.
MrmrRanking mrmr_rank(const DiscretizedMatrix& matrix, std::span<const std::uint8_t> labels,
                      std::size_t k, MrmrScheme scheme = MrmrScheme::MID);

// Single-thread reference producing the exact same ranking; kept for tests
// and benchmarks.
MrmrRanking mrmr_rank_serial(const DiscretizedMatrix& matrix,
                             std::span<const std::uint8_t> labels, std::size_t k,
                             MrmrScheme scheme = MrmrScheme::MID);

}  // namespace engage::select
