#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "engage/body/schegloff.hpp"
#include "engage/laser/pairing.hpp"
#include "engage/sim/scenarios.hpp"
#include "engage/sim/simulate.hpp"

using namespace engage;
using namespace engage::sim;

namespace {

ScenarioScript empty_script(double seconds) {
  ScenarioScript s;
  s.name = "empty";
  s.duration = static_cast<Timestamp>(seconds * 1e6);
  return s;
}

ScenarioScript single_agent(std::vector<Waypoint> waypoints) {
  ScenarioScript s;
  s.name = "single";
  AgentScript agent;
  agent.id = 1;
  agent.waypoints = std::move(waypoints);
  s.duration = ((agent.waypoints.back().t + 500'000) / kTickUs) * kTickUs;
  s.agents.push_back(std::move(agent));
  return s;
}

}  // namespace

TEST_CASE("script validation") {
  SUBCASE("waypoints outside the room are rejected") {
    auto s = single_agent({{0, {0.0, 0.0}}, {1'000'000, {5.5, 0.0}}});
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("outside the room"),
                         std::invalid_argument);
  }
  SUBCASE("the notch is outside the room") {
    // x > 1 with y > 0 was cut away from the rectangle.
    auto s = single_agent({{0, {0.0, 0.0}}, {1'000'000, {2.0, 1.5}}});
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("overlapping intents are rejected") {
    auto s = single_agent({{0, {0.0, 0.0}}, {2'000'000, {1.0, -1.0}}});
    s.agents[0].intents.push_back({0, 1'000'000, Intent::Approach});
    s.agents[0].intents.push_back({500'000, 1'500'000, Intent::Depart});
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("script text round-trip") {
    const ScenarioScript original = approach_interact_leave(3);
    std::stringstream ss;
    write_script(ss, original);
    const ScenarioScript parsed = parse_script(ss);
    CHECK(parsed.name == original.name);
    CHECK(parsed.duration == original.duration);
    REQUIRE(parsed.agents.size() == original.agents.size());
    REQUIRE(parsed.agents[0].waypoints.size() == original.agents[0].waypoints.size());
    for (std::size_t i = 0; i < original.agents[0].waypoints.size(); ++i) {
      CHECK(parsed.agents[0].waypoints[i].t == original.agents[0].waypoints[i].t);
      CHECK(parsed.agents[0].waypoints[i].p.x ==
            doctest::Approx(original.agents[0].waypoints[i].p.x));
    }
    CHECK(parsed.agents[0].intents.size() == original.agents[0].intents.size());
    CHECK(parsed.agents[0].touches.size() == original.agents[0].touches.size());
  }
}

TEST_CASE("empty script: walls only, silence, all noOne") {
  SensorConfig config;
  const SimulationResult res = simulate(empty_script(4.0), config);
  CHECK(res.laser.size() == 50);
  CHECK(res.skeletons.empty());
  CHECK(res.faces.empty());
  CHECK(res.localization.empty());
  for (const auto& tag : res.sad) CHECK(tag.tag == acoustic::SadValue::NotSpeech);
  CHECK(res.timeline.empty());

  // Static scene: with the noise turned off every scan equals the first.
  SensorConfig noiseless = config;
  noiseless.lidar_noise = 1e-12;
  const SimulationResult clean = simulate(empty_script(4.0), noiseless);
  for (std::size_t b = 0; b < clean.laser[0].ranges.size(); ++b) {
    CHECK(clean.laser[5].ranges[b] ==
          doctest::Approx(clean.laser[0].ranges[b]).epsilon(1e-9));
  }
}

TEST_CASE("determinism: identical script and seed give identical streams") {
  SensorConfig config;
  config.seed = 99;
  const ScenarioScript script = approach_interact_leave(1);
  const SimulationResult a = simulate(script, config);
  const SimulationResult b = simulate(script, config);
  REQUIRE(a.laser.size() == b.laser.size());
  for (std::size_t i = 0; i < a.laser.size(); ++i) {
    CHECK(a.laser[i].ranges == b.laser[i].ranges);
  }
  REQUIRE(a.skeletons.size() == b.skeletons.size());
  for (std::size_t i = 0; i < a.skeletons.size(); ++i) {
    for (std::size_t j = 0; j < body::kJointCount; ++j) {
      CHECK(a.skeletons[i].joints[j].x == b.skeletons[i].joints[j].x);
      CHECK(a.skeletons[i].joints[j].z == b.skeletons[i].joints[j].z);
    }
  }
  REQUIRE(a.faces.size() == b.faces.size());
  REQUIRE(a.localization.size() == b.localization.size());
  for (std::size_t i = 0; i < a.localization.size(); ++i) {
    CHECK(a.localization[i].angle == b.localization[i].angle);
  }
}

TEST_CASE("field of view gating is exact against the script") {
  SensorConfig config;
  config.seed = 5;
  // Walk across the far side: partly inside, partly outside the 60 deg cone.
  const ScenarioScript script =
      single_agent({{80'000, {2.5, -2.2}}, {6'000'000, {-2.5, 1.8}}});
  const SimulationResult res = simulate(script, config);
  REQUIRE(!res.skeletons.empty());

  auto outside = [&](Timestamp t) {
    const Point2 p = script.agents[0].position_at(t);
    const double bearing = std::atan2(p.y, p.x);
    const double dist = std::hypot(p.x, p.y);
    return std::abs(bearing) > config.kinect_fov * 0.5 || dist < config.kinect_min_depth ||
           dist > config.kinect_max_depth;
  };
  for (const auto& frame : res.skeletons) CHECK_FALSE(outside(frame.t));
  for (const auto& face : res.faces) CHECK_FALSE(outside(face.t));

  // An agent parked at bearing ~40 degrees never produces records.
  const ScenarioScript parked =
      single_agent({{80'000, {0.9, 0.76}}, {4'000'000, {0.9, 0.76}}});
  const SimulationResult none = simulate(parked, config);
  CHECK(none.skeletons.empty());
  CHECK(none.faces.empty());
}

TEST_CASE("gait: scripted feet keep the leg space constant while walking") {
  GaitModel gait;
  const ScenarioScript script =
      single_agent({{80'000, {2.5, -2.0}}, {5'000'000, {-2.0, 1.5}}});
  const AgentScript& agent = script.agents[0];
  int windows = 0;
  int in_band = 0;
  std::deque<double> window;
  for (Timestamp t = 160'000; t < 4'900'000; t += kTickUs) {
    Point2 left, right;
    bool walking = false;
    feet_at(agent, t, gait, left, right, walking);
    if (!walking) continue;
    const Point2 v = agent.velocity_at(t);
    const Eigen::Vector2d dir(v.x, v.y);
    const double space = laser::leg_space(Eigen::Vector2d(left.x, left.y),
                                          Eigen::Vector2d(right.x, right.y), dir);
    CHECK(space == doctest::Approx(gait.leg_space).epsilon(0.07));
    window.push_back(space);
    if (window.size() > 6) window.pop_front();
    if (window.size() == 6) {
      ++windows;
      const auto stats = laser::window_stats(window);
      if (stats.mean >= 0.28 && stats.mean <= 0.32) ++in_band;
    }
  }
  REQUIRE(windows > 20);
  CHECK(static_cast<double>(in_band) / windows >= 0.95);
}

TEST_CASE("occlusion: tangential passes hide one foot behind the other") {
  SensorConfig config;
  config.seed = 3;
  const ScenarioScript script = occlusion_approach(0);
  const SimulationResult res = simulate(script, config);

  int episodes = 0;
  bool prev = false;
  int occluded_frames = 0;
  for (const TickTruth& tick : res.truth) {
    REQUIRE(tick.agents.size() == 1);
    const AgentTruth& at = tick.agents[0];
    const bool single = at.present && (at.left_occluded != at.right_occluded);
    if (single) ++occluded_frames;
    if (single && !prev) ++episodes;
    prev = single;
  }
  INFO("episodes=" << episodes << " occluded_frames=" << occluded_frames);
  CHECK(episodes >= 10);
}

TEST_CASE("speech produces SAD tags and localization at the speaker bearing") {
  SensorConfig config;
  config.seed = 8;
  const ScenarioScript script = approach_interact_leave(2);
  const SimulationResult res = simulate(script, config);
  const AgentScript& agent = script.agents[0];
  REQUIRE(!agent.speech.empty());
  const TimeInterval speech = agent.speech[0];

  bool any_speech_tag = false;
  for (const auto& tag : res.sad) {
    const bool inside = tag.t >= speech.start && tag.t < speech.end;
    if (inside) {
      CHECK(tag.tag == acoustic::SadValue::Speech);
      any_speech_tag = true;
    }
  }
  CHECK(any_speech_tag);

  REQUIRE(!res.localization.empty());
  for (const auto& ev : res.localization) {
    const Point2 p = agent.position_at(ev.t);
    const double bearing = std::atan2(p.y, p.x);
    CHECK(std::abs(body::wrap_angle(ev.angle - bearing)) < 0.45);  // 5 sigma
    CHECK(ev.confidence >= 0.5);
    CHECK(ev.confidence <= 1.0);
  }
}

TEST_CASE("builtin scenarios") {
  SUBCASE("pass_by has presence but never an interaction") {
    for (std::uint32_t v : {0u, 1u, 2u, 7u}) {
      const ScenarioScript s = pass_by(v);
      REQUIRE(s.agents.size() == 1);
      CHECK(s.agents[0].touches.empty());
      CHECK(s.agents[0].intents.empty());
      // The path passes within a meter of the robot.
      double closest = 1e9;
      const AgentScript& agent = s.agents[0];
      for (Timestamp t = agent.enter_time(); t <= agent.exit_time(); t += kTickUs) {
        const Point2 p = agent.position_at(t);
        closest = std::min(closest, std::hypot(p.x, p.y));
      }
      CHECK(closest < 1.0);
      const SimulationResult res = simulate(s, SensorConfig{});
      bool has_enter = false;
      for (const auto& e : res.timeline) {
        CHECK(e.kind != fusion::EventKind::TouchFirst);
        if (e.kind == fusion::EventKind::Enter) has_enter = true;
      }
      CHECK(has_enter);
    }
  }
  SUBCASE("approach_interact_leave produces the full ordered label sequence") {
    const ScenarioScript s = approach_interact_leave(0);
    const SimulationResult res = simulate(s, SensorConfig{});
    const auto tl = fusion::AnnotationTimeline::from_events(res.timeline);
    std::vector<Label5> order;
    for (Timestamp t = kTickUs; t <= res.t1; t += kTickUs) {
      const Label5 l = tl.label_at(t);
      if (order.empty() || order.back() != l) order.push_back(l);
    }
    const std::vector<Label5> expected{
        Label5::NoOne,       Label5::Someone,          Label5::WantInteraction,
        Label5::Interaction, Label5::LeaveInteraction, Label5::Someone,
        Label5::NoOne};
    CHECK(order == expected);
  }
  SUBCASE("cards_multiuser has three concurrent participants") {
    const ScenarioScript s = cards_multiuser(0);
    REQUIRE(s.agents.size() == 3);
    Timestamp latest_enter = 0;
    Timestamp earliest_exit = s.duration;
    for (const auto& agent : s.agents) {
      latest_enter = std::max(latest_enter, agent.enter_time());
      earliest_exit = std::min(earliest_exit, agent.exit_time());
    }
    CHECK(latest_enter < earliest_exit);  // a window with all three present
    int touches = 0;
    for (const auto& agent : s.agents) touches += static_cast<int>(agent.touches.size());
    CHECK(touches == 1);
  }
}
