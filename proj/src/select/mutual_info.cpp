#include "engage/select/mutual_info.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace engage::select {

namespace {

std::size_t alphabet_size(std::span<const std::uint8_t> v) {
  std::uint8_t m = 0;
  for (std::uint8_t s : v) m = std::max(m, s);
  return static_cast<std::size_t>(m) + 1;
}

}  // namespace

double mutual_information(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw std::invalid_argument("mutual_information length mismatch");
  if (x.empty()) throw std::invalid_argument("mutual_information on empty columns");

  const std::size_t nx = alphabet_size(x);
  const std::size_t ny = alphabet_size(y);
  std::vector<double> joint(nx * ny, 0.0);
  std::vector<double> px(nx, 0.0);
  std::vector<double> py(ny, 0.0);
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    joint[x[i] * ny + y[i]] += 1.0;
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
  }

  double info = 0.0;
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const double pxy = joint[a * ny + b] / n;
      if (pxy == 0.0) continue;
      info += pxy * std::log2(pxy * n * n / (px[a] * py[b]));
    }
  }
  return info < 0.0 ? 0.0 : info;  // clip the tiny negative round-off
}

double entropy(std::span<const std::uint8_t> x) {
  if (x.empty()) throw std::invalid_argument("entropy on empty column");
  const std::size_t nx = alphabet_size(x);
  std::vector<double> px(nx, 0.0);
  for (std::uint8_t s : x) px[s] += 1.0;
  const double n = static_cast<double>(x.size());
  double h = 0.0;
  for (double c : px) {
    if (c == 0.0) continue;
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace engage::select
