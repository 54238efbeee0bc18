#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engage/core/validate.hpp"
#include "engage/fusion/channels.hpp"
#include "engage/fusion/synchronize.hpp"
#include "engage/fusion/timeline.hpp"

using namespace engage;
using namespace engage::fusion;

namespace {

LaserRecord laser_record(Timestamp t, double x, double y) {
  LaserRecord r;
  r.t = t;
  r.best = {t, 0, x, y, 0.0, 0.0, std::hypot(x, y)};
  r.count = 1;
  return r;
}

BodyRecord body_record(Timestamp t, double skl_dist) {
  BodyRecord r;
  r.t = t;
  r.skeleton_id = 1;
  r.count = 1;
  r.skl_dist = skl_dist;
  body::SegmentPose pose{0.0, 1.4, skl_dist, 0.0};
  r.metrics.stance = pose;
  r.metrics.hip = pose;
  r.metrics.torso = pose;
  r.metrics.shoulder = pose;
  r.metrics.hip_torque = 0.0;
  r.metrics.torso_torque = 0.0;
  r.metrics.shoulder_torque = 0.0;
  return r;
}

}  // namespace

TEST_CASE("channel buffer rejects non-monotone timestamps") {
  struct Rec {
    Timestamp t;
  };
  CHECK_THROWS_AS(ChannelBuffer<Rec>({{100}, {50}}), std::invalid_argument);
  ChannelBuffer<Rec> ok({{50}, {100}});
  CHECK_THROWS_AS(ok.push({80}), std::invalid_argument);
}

TEST_CASE("synchronize: last value at or before the tick") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  // Records at 10, 50, 90 ms: the 80 ms tick must see the 50 ms record.
  inputs.laser.push_back(laser_record(10'000, 1.0, 0.0));
  inputs.laser.push_back(laser_record(50'000, 2.0, 0.0));
  inputs.laser.push_back(laser_record(90'000, 3.0, 0.0));

  const auto frames = synchronize(inputs, manifest, 0, 160'000);
  REQUIRE(frames.size() == 2);
  const std::size_t xi = *manifest.index_of("cible_x");
  CHECK(frames[0].t == 80'000);
  CHECK(frames[0].values[xi] == doctest::Approx(2.0));
  CHECK(frames[1].values[xi] == doctest::Approx(3.0));
}

TEST_CASE("synchronize: tick count and spacing are exact") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  const auto frames = synchronize(inputs, manifest, 0, 40 * kTickUs);
  REQUIRE(frames.size() == 40);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    CHECK(frames[i].t - frames[i - 1].t == kTickUs);
  }
}

TEST_CASE("synchronize: empty channels stay masked absent") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  const auto frames = synchronize(inputs, manifest, 0, 8 * kTickUs);
  for (const RawFrame& f : frames) {
    for (bool p : f.channel_present) CHECK_FALSE(p);
    for (bool p : f.feature_present) CHECK_FALSE(p);
  }
}

TEST_CASE("synchronize: staleness expires held values") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  inputs.laser.push_back(laser_record(80'000, 1.0, 0.0));
  SyncConfig config;  // laser staleness 160 ms
  const auto frames = synchronize(inputs, manifest, 0, 5 * kTickUs, config);
  const auto li = static_cast<std::size_t>(Channel::Laser);
  CHECK(frames[0].channel_present[li]);  // t=80
  CHECK(frames[1].channel_present[li]);  // t=160
  CHECK(frames[2].channel_present[li]);  // t=240, exactly at the bound
  CHECK_FALSE(frames[3].channel_present[li]);
  CHECK_FALSE(frames[4].channel_present[li]);
}

TEST_CASE("synchronize: non-monotone channel is rejected with the record") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  inputs.laser.push_back(laser_record(200'000, 1.0, 0.0));
  inputs.laser.push_back(laser_record(100'000, 2.0, 0.0));
  CHECK_THROWS_WITH_AS(synchronize(inputs, manifest, 0, 8 * kTickUs),
                       doctest::Contains("non-monotone"), std::invalid_argument);
}

TEST_CASE("synchronize is causal: truncating later records never changes earlier frames") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs full;
  for (int i = 0; i < 20; ++i) full.laser.push_back(laser_record(i * 40'000, 0.1 * i, 0.0));
  for (int i = 0; i < 50; ++i) {
    full.sad.push_back({i * 10'000, i % 3 == 0 ? acoustic::SadValue::Speech
                                               : acoustic::SadValue::NotSpeech});
  }
  const auto frames_full = synchronize(full, manifest, 0, 4 * kTickUs);

  FusionInputs cut;
  const Timestamp horizon = 2 * kTickUs;
  for (const auto& r : full.laser) {
    if (r.t <= horizon) cut.laser.push_back(r);
  }
  for (const auto& r : full.sad) {
    if (r.t <= horizon) cut.sad.push_back(r);
  }
  const auto frames_cut = synchronize(cut, manifest, 0, horizon);
  for (std::size_t i = 0; i < frames_cut.size(); ++i) {
    CHECK(frames_cut[i].values.size() == frames_full[i].values.size());
    for (std::size_t j = 0; j < frames_cut[i].values.size(); ++j) {
      if (frames_cut[i].feature_present[j] || frames_full[i].feature_present[j]) {
        CHECK(frames_cut[i].feature_present[j] == frames_full[i].feature_present[j]);
        CHECK(frames_cut[i].values[j] == frames_full[i].values[j]);
      }
    }
  }
}

TEST_CASE("impute_neutral") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  SUBCASE("no pedestrian: cible features all zero") {
    FusionInputs inputs;
    inputs.body.push_back(body_record(80'000, 2.0));
    const auto frames = synchronize(inputs, manifest, 0, kTickUs);
    const FeatureVector v = impute_neutral(frames[0], manifest);
    for (const char* id : {"cible_x", "cible_y", "cible_dx", "cible_dy", "cible_dist"}) {
      CHECK(v.values[*manifest.index_of(id)] == 0.0);
    }
    CHECK(v.values[*manifest.index_of("skl_dist")] == doctest::Approx(2.0));
    CHECK(v.channel_present(Channel::Skeleton));
    CHECK_FALSE(v.channel_present(Channel::Laser));
  }
  SUBCASE("pedestrian without skeleton keeps spatial features real, metrics neutral") {
    FusionInputs inputs;
    inputs.laser.push_back(laser_record(80'000, 1.2, -0.5));
    const auto frames = synchronize(inputs, manifest, 0, kTickUs);
    const FeatureVector v = impute_neutral(frames[0], manifest);
    CHECK(v.values[*manifest.index_of("cible_x")] == doctest::Approx(1.2));
    for (const char* id : {"stancePose_rot", "hipTorque", "shoulderPose_rot", "skl_dist"}) {
      CHECK(v.values[*manifest.index_of(id)] == 0.0);
    }
    // Imputed frames satisfy the core invariants.
    SyncedFrame frame{frames[0].t, v, Label5::Someone};
    CHECK(validate_frame(frame, manifest).empty());
  }
  SUBCASE("fully present frames pass through unchanged") {
    FusionInputs inputs;
    inputs.laser.push_back(laser_record(80'000, 1.0, 0.0));
    inputs.body.push_back(body_record(80'000, 2.5));
    inputs.face.push_back({80'000, {10.0, -5.0, 42.0}, 1});
    inputs.sad.push_back({80'000, acoustic::SadValue::Speech});
    inputs.localization.push_back({80'000, 0.1, 0.15, 0.9});
    const auto frames = synchronize(inputs, manifest, 0, kTickUs);
    const FeatureVector v = impute_neutral(frames[0], manifest);
    for (bool p : v.present) CHECK(p);
    CHECK(v.values[*manifest.index_of("sad_event")] == 1.0);
    CHECK(v.values[*manifest.index_of("face_size")] == doctest::Approx(42.0));
    CHECK(v.values[*manifest.index_of("angle")] == doctest::Approx(0.15));
  }
}

TEST_CASE("timeline labeling") {
  // enter 0.16 s, approach 0.8 s, touch 1.6..2.4 s, depart ends 3.2 s, exit 4 s.
  std::vector<TimelineEvent> events{
      {2 * kTickUs, EventKind::Enter, 1},
      {10 * kTickUs, EventKind::ApproachStart, 1},
      {20 * kTickUs, EventKind::ApproachEnd, 1},
      {20 * kTickUs, EventKind::TouchFirst, 1},
      {30 * kTickUs, EventKind::TouchLast, 1},
      {30 * kTickUs, EventKind::DepartStart, 1},
      {40 * kTickUs, EventKind::DepartEnd, 1},
      {50 * kTickUs, EventKind::Exit, 1},
  };
  const auto tl = AnnotationTimeline::from_events(events);

  SUBCASE("interaction spans first touch to last click, inclusive") {
    CHECK(tl.label_at(20 * kTickUs) == Label5::Interaction);
    CHECK(tl.label_at(25 * kTickUs) == Label5::Interaction);
    CHECK(tl.label_at(30 * kTickUs) == Label5::Interaction);
    CHECK(tl.label_at(31 * kTickUs) == Label5::LeaveInteraction);
  }
  SUBCASE("approach is wantInteraction until the touch") {
    CHECK(tl.label_at(10 * kTickUs) == Label5::WantInteraction);
    CHECK(tl.label_at(19 * kTickUs) == Label5::WantInteraction);
  }
  SUBCASE("presence without intent is someone; absence is noOne") {
    CHECK(tl.label_at(0) == Label5::NoOne);
    CHECK(tl.label_at(2 * kTickUs) == Label5::Someone);
    CHECK(tl.label_at(9 * kTickUs) == Label5::Someone);
    CHECK(tl.label_at(45 * kTickUs) == Label5::Someone);
    CHECK(tl.label_at(50 * kTickUs) == Label5::NoOne);
  }
  SUBCASE("every tick carries exactly one label and they partition the run") {
    const Label5 expected_order[] = {Label5::NoOne,           Label5::Someone,
                                     Label5::WantInteraction, Label5::Interaction,
                                     Label5::LeaveInteraction, Label5::Someone,
                                     Label5::NoOne};
    std::vector<Label5> sequence;
    for (Timestamp t = 0; t <= 55 * kTickUs; t += kTickUs) {
      const Label5 l = tl.label_at(t);
      if (sequence.empty() || sequence.back() != l) sequence.push_back(l);
    }
    REQUIRE(sequence.size() == 7);
    for (std::size_t i = 0; i < sequence.size(); ++i) CHECK(sequence[i] == expected_order[i]);
  }
}

TEST_CASE("timeline rejects contradictions") {
  SUBCASE("overlapping interactions") {
    std::vector<TimelineEvent> events{
        {100, EventKind::TouchFirst, 1},
        {300, EventKind::TouchLast, 1},
        {200, EventKind::TouchFirst, 2},
        {400, EventKind::TouchLast, 2},
    };
    CHECK_THROWS_AS(AnnotationTimeline::from_events(events), std::invalid_argument);
  }
  SUBCASE("unclosed interval") {
    std::vector<TimelineEvent> events{{100, EventKind::Enter, 1}};
    CHECK_THROWS_AS(AnnotationTimeline::from_events(events), std::invalid_argument);
  }
  SUBCASE("inverted interval") {
    std::vector<TimelineEvent> events{
        {300, EventKind::Enter, 1},
        {300, EventKind::Exit, 1},
    };
    CHECK_THROWS_AS(AnnotationTimeline::from_events(events), std::invalid_argument);
  }
}

TEST_CASE("fuse: labels attach after imputation") {
  const FeatureManifest& manifest = FeatureManifest::selected32();
  FusionInputs inputs;
  inputs.laser.push_back(laser_record(2 * kTickUs, 1.0, 0.5));
  std::vector<TimelineEvent> events{
      {kTickUs, EventKind::Enter, 1},
      {4 * kTickUs, EventKind::Exit, 1},
  };
  const auto tl = AnnotationTimeline::from_events(events);
  const auto frames = fuse(inputs, tl, manifest, 0, 5 * kTickUs);
  REQUIRE(frames.size() == 5);
  CHECK(frames[0].label == Label5::Someone);
  CHECK(frames[3].label == Label5::NoOne);
  for (const auto& f : frames) CHECK(validate_frame(f, manifest).empty());
}
