#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engage/core/types.hpp"

namespace engage {

enum class Unit : std::uint8_t {
  Meter,
  MeterPerSecond,
  Radian,
  Pixel,
  Tag,
  Count,
  Dimensionless,
};

const char* to_string(Unit u);
std::optional<Unit> unit_from_string(std::string_view s);

enum class Edition : std::uint8_t { Selected32, Full99 };

struct FeatureDef {
  std::string id;
  Unit unit = Unit::Dimensionless;
  Channel channel = Channel::Laser;
  double neutral = 0.0;
};

// Ordered feature catalog. The 32-feature edition keeps the ranked order of
// the reference feature table; the 99-feature edition appends the raw joint
// tuples and stream bookkeeping counters.
class FeatureManifest {
 public:
  FeatureManifest(Edition edition, std::vector<FeatureDef> features);

  static const FeatureManifest& selected32();
  static const FeatureManifest& full99();
  static const FeatureManifest& edition(Edition e);

  // Line format: index<TAB>id<TAB>unit<TAB>channel<TAB>neutral
  void serialize(std::ostream& out) const;
  static FeatureManifest parse(std::istream& in, Edition edition);

  std::size_t size() const { return features_.size(); }
  const FeatureDef& at(std::size_t i) const { return features_.at(i); }
  const std::vector<FeatureDef>& features() const { return features_; }
  Edition edition_tag() const { return edition_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  std::vector<std::size_t> channel_indices(Channel c) const;

  // The five Table-1 spatial features, used for the telemeter-only condition.
  std::vector<std::size_t> spatial_indices() const;

  bool operator==(const FeatureManifest& other) const;

 private:
  Edition edition_;
  std::vector<FeatureDef> features_;
};

// Vector with every feature at its manifest neutral and all channels masked
// absent.
FeatureVector neutral_vector(const FeatureManifest& manifest);

}  // namespace engage
