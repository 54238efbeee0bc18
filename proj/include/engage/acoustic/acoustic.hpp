#pragma once

#include <optional>
#include <span>
#include <vector>

#include "engage/core/types.hpp"

namespace engage::acoustic {

enum class SadValue : std::uint8_t { NotSpeech = 0, Speech = 1 };

struct SadTag {
  Timestamp t = 0;
  SadValue tag = SadValue::NotSpeech;
};

struct SourceLocalization {
  Timestamp t = 0;
  double beam = 0.0;   // stimulated beam, one of the discrete beam set
  double angle = 0.0;  // finer azimuth
  double confidence = 0.0;
};

struct AcousticConfig {
  Timestamp localization_staleness = 250'000;  // two localizer periods
  int beam_count = 11;
  double beam_sector = 0.8726646259971648;  // +-50 deg usable array sector
};

// Speech wins over any number of not-speech tags in the tick window;
// an empty window leaves the channel absent.
std::optional<SadValue> sad_for_tick(std::span<const SadTag> tags_in_window);

// Last event at or before t, unless it aged out of the staleness bound.
std::optional<SourceLocalization> localization_for_tick(
    std::span<const SourceLocalization> events, Timestamp t,
    const AcousticConfig& config = {});

// Discrete beam closest to the azimuth; the set spans the usable sector
// uniformly.
double quantize_beam(double azimuth, const AcousticConfig& config = {});

}  // namespace engage::acoustic
