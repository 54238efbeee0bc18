#include "engage/acoustic/acoustic.hpp"

#include <algorithm>
#include <cmath>

namespace engage::acoustic {

std::optional<SadValue> sad_for_tick(std::span<const SadTag> tags_in_window) {
  if (tags_in_window.empty()) return std::nullopt;
  for (const SadTag& tag : tags_in_window) {
    if (tag.tag == SadValue::Speech) return SadValue::Speech;
  }
  return SadValue::NotSpeech;
}

std::optional<SourceLocalization> localization_for_tick(
    std::span<const SourceLocalization> events, Timestamp t, const AcousticConfig& config) {
  const SourceLocalization* last = nullptr;
  for (const SourceLocalization& e : events) {
    if (e.t > t) break;  // events are time-ordered; never look ahead
    last = &e;
  }
  if (last == nullptr) return std::nullopt;
  if (t - last->t > config.localization_staleness) return std::nullopt;
  return *last;
}

double quantize_beam(double azimuth, const AcousticConfig& config) {
  const double lo = -config.beam_sector;
  const double hi = config.beam_sector;
  const double clamped = std::clamp(azimuth, lo, hi);
  if (config.beam_count <= 1) return 0.0;
  const double pitch = (hi - lo) / (config.beam_count - 1);
  const double idx = std::round((clamped - lo) / pitch);
  return lo + idx * pitch;
}

}  // namespace engage::acoustic
