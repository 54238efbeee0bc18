#pragma once

#include <cstdint>
#include <span>

namespace engage::select {

// I(X;Y) in bits over the empirical joint distribution of two discrete
// columns. Throws on length mismatch or empty input.
double mutual_information(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

// H(X) in bits over the empirical distribution.
double entropy(std::span<const std::uint8_t> x);

}  // namespace engage::select
