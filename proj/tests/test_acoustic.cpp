#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "engage/acoustic/acoustic.hpp"

using namespace engage;
using namespace engage::acoustic;

namespace {

std::vector<SadTag> tags_of(std::initializer_list<int> values, Timestamp start = 0) {
  std::vector<SadTag> tags;
  Timestamp t = start;
  for (int v : values) {
    tags.push_back({t, v != 0 ? SadValue::Speech : SadValue::NotSpeech});
    t += 10'000;
  }
  return tags;
}

}  // namespace

TEST_CASE("sad_for_tick") {
  SUBCASE("unanimous not-speech stays not-speech") {
    const auto tags = tags_of({0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(sad_for_tick(tags) == SadValue::NotSpeech);
  }
  SUBCASE("one speech tag wins the window") {
    const auto tags = tags_of({0, 0, 0, 0, 0, 0, 0, 1});
    CHECK(sad_for_tick(tags) == SadValue::Speech);
  }
  SUBCASE("empty window leaves the channel absent") {
    CHECK_FALSE(sad_for_tick({}).has_value());
  }
  SUBCASE("monotone: adding speech never flips speech to not-speech") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<SadTag> tags;
      for (int i = 0; i < 8; ++i) {
        tags.push_back({i * 10'000, rng() % 2 ? SadValue::Speech : SadValue::NotSpeech});
      }
      const auto before = sad_for_tick(tags);
      tags.push_back({80'000, SadValue::Speech});
      const auto after = sad_for_tick(tags);
      REQUIRE(after.has_value());
      CHECK(*after == SadValue::Speech);
      if (before == SadValue::Speech) CHECK(*after == SadValue::Speech);
    }
  }
}

TEST_CASE("localization_for_tick") {
  const std::vector<SourceLocalization> events{
      {100'000, 0.1, 0.12, 0.9},
      {225'000, 0.2, 0.22, 0.8},
      {350'000, 0.3, 0.33, 0.7},
  };
  SUBCASE("recent event inside the staleness bound is held") {
    const auto hit = localization_for_tick(events, 390'000);
    REQUIRE(hit);
    CHECK(hit->angle == doctest::Approx(0.33));
  }
  SUBCASE("an event two seconds old has expired") {
    CHECK_FALSE(localization_for_tick(events, 2'350'000).has_value());
  }
  SUBCASE("no events at all") {
    CHECK_FALSE(localization_for_tick({}, 80'000).has_value());
  }
  SUBCASE("causal: future events are invisible") {
    const auto hit = localization_for_tick(events, 300'000);
    REQUIRE(hit);
    CHECK(hit->angle == doctest::Approx(0.22));  // not the 350 ms event
    // Truncating the future changes nothing.
    const std::vector<SourceLocalization> truncated(events.begin(), events.begin() + 2);
    const auto same = localization_for_tick(truncated, 300'000);
    REQUIRE(same);
    CHECK(same->angle == hit->angle);
  }
  SUBCASE("staleness bound is honored exactly") {
    AcousticConfig config;
    config.localization_staleness = 250'000;
    CHECK(localization_for_tick(events, 350'000 + 250'000, config).has_value());
    CHECK_FALSE(localization_for_tick(events, 350'000 + 250'001, config).has_value());
  }
}

TEST_CASE("quantize_beam snaps to the discrete beam set") {
  AcousticConfig config;  // 11 beams over +-50 deg
  const double sector = config.beam_sector;
  const double pitch = 2.0 * sector / (config.beam_count - 1);
  CHECK(quantize_beam(0.0) == doctest::Approx(0.0));
  CHECK(quantize_beam(pitch * 0.4) == doctest::Approx(0.0));
  CHECK(quantize_beam(pitch * 0.6) == doctest::Approx(pitch));
  CHECK(quantize_beam(2.0) == doctest::Approx(sector));    // clamped to the edge
  CHECK(quantize_beam(-2.0) == doctest::Approx(-sector));
}
