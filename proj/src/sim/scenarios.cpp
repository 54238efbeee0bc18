#include "engage/sim/scenarios.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace engage::sim {

namespace {

Timestamp snap(Timestamp t) { return ((t + kTickUs - 1) / kTickUs) * kTickUs; }

Timestamp snap_seconds(double s) { return snap(static_cast<Timestamp>(s * 1e6)); }

// Constant-speed walk along waypoints with tick-aligned times.
class PathBuilder {
 public:
  PathBuilder(int id, Point2 start, Timestamp t_enter) {
    agent_.id = id;
    agent_.waypoints.push_back({snap(t_enter), start});
  }

  Timestamp now() const { return agent_.waypoints.back().t; }
  Point2 here() const { return agent_.waypoints.back().p; }

  Timestamp walk_to(Point2 p, double speed) {
    const Point2 cur = here();
    const double dist = std::hypot(p.x - cur.x, p.y - cur.y);
    const Timestamp t = snap(now() + static_cast<Timestamp>(dist / speed * 1e6));
    agent_.waypoints.push_back({t, p});
    return t;
  }

  Timestamp pause(double seconds) {
    const Timestamp t = snap(now() + static_cast<Timestamp>(seconds * 1e6));
    agent_.waypoints.push_back({t, here()});
    return t;
  }

  AgentScript&& finish() { return std::move(agent_); }
  AgentScript& agent() { return agent_; }

 private:
  AgentScript agent_;
};

Point2 door_point(const Room& room, int which) {
  switch (which % 3) {
    case 0: return room.door_a;
    case 1: return room.door_b;
    default: return room.door_c;
  }
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

ScenarioScript pass_by(std::uint32_t variant) {
  std::mt19937_64 rng(0xC0FFEEull * 2654435761u + variant);
  ScenarioScript script;
  script.name = "pass_by";
  const Room& room = script.room;

  const int entry = static_cast<int>(rng() % 3);
  const int exit = (entry + 1 + static_cast<int>(rng() % 2)) % 3;

  // A near waypoint pulls the crossing within a meter of the robot.
  const Point2 d_in = door_point(room, entry);
  const Point2 d_out = door_point(room, exit);
  const double mid_angle = std::atan2((d_in.y + d_out.y) * 0.5, (d_in.x + d_out.x) * 0.5);
  const double angle = mid_angle + uniform(rng, -0.45, 0.45);
  const double radius = uniform(rng, 0.55, 0.95);
  const Point2 near{radius * std::cos(angle), radius * std::sin(angle)};

  const double speed = uniform(rng, 0.9, 1.35);
  PathBuilder path(1, d_in, snap_seconds(uniform(rng, 0.4, 1.4)));
  path.walk_to(near, speed);
  if (rng() % 3 == 0) path.pause(uniform(rng, 0.3, 0.9));  // a curious glance, nothing more
  const Timestamp t_exit = path.walk_to(d_out, speed);

  script.agents.push_back(path.finish());
  script.duration = snap(t_exit + snap_seconds(uniform(rng, 1.0, 2.0)));
  script.validate();
  return script;
}

ScenarioScript approach_interact_leave(std::uint32_t variant) {
  std::mt19937_64 rng(0xAB5EEDull * 2654435761u + variant);
  ScenarioScript script;
  script.name = "approach_interact_leave";
  const Room& room = script.room;

  const int entry = static_cast<int>(rng() % 3);
  const int exit = static_cast<int>(rng() % 3);
  const double speed = uniform(rng, 0.9, 1.35);

  // Wander point in front of the robot, inside the notch-free south-east area.
  const Point2 wander{uniform(rng, 1.7, 2.6), uniform(rng, -1.25, -0.2)};
  const Point2 stop{uniform(rng, 0.5, 0.65), uniform(rng, -0.08, 0.10)};

  PathBuilder path(1, door_point(room, entry), snap_seconds(uniform(rng, 0.4, 1.2)));
  path.walk_to(wander, speed);
  const Timestamp approach_start = path.pause(uniform(rng, 0.9, 2.0));
  const Timestamp arrive = path.walk_to(stop, speed);
  const Timestamp touch_last = path.pause(uniform(rng, 1.8, 3.4));
  // The first stretch away from the tablet is the departure path.
  const Point2 away{uniform(rng, 1.9, 2.5), uniform(rng, -1.5, -0.6)};
  const Timestamp depart_end = path.walk_to(away, speed);
  const Timestamp t_exit = path.walk_to(door_point(room, exit), speed);

  AgentScript agent = path.finish();
  agent.intents.push_back({approach_start, arrive, Intent::Approach});
  agent.intents.push_back({arrive, touch_last, Intent::Interact});
  agent.intents.push_back({touch_last, depart_end, Intent::Depart});
  agent.touches.push_back({arrive, touch_last});
  // A short utterance on the way in.
  const Timestamp speech_start = snap(approach_start + (arrive - approach_start) / 4);
  agent.speech.push_back({speech_start, arrive});
  script.agents.push_back(std::move(agent));

  script.duration = snap(t_exit + snap_seconds(uniform(rng, 1.0, 2.0)));
  script.validate();
  return script;
}

ScenarioScript cards_multiuser(std::uint32_t variant) {
  std::mt19937_64 rng(0xCA4D5ull * 2654435761u + variant);
  ScenarioScript script;
  script.name = "cards_multiuser";
  const Room& room = script.room;

  const Point2 seats[3] = {{-2.05, 1.65}, {-1.55, 1.95}, {-2.35, 1.25}};
  const int dispatched = static_cast<int>(rng() % 3);
  const double speed = uniform(rng, 0.9, 1.25);

  Timestamp scenario_end = 0;
  for (int i = 0; i < 3; ++i) {
    PathBuilder path(i + 1, room.door_b, snap_seconds(0.6 + 1.4 * i));
    path.walk_to(seats[i], speed);
    AgentScript agent;
    if (i == dispatched) {
      const Timestamp approach_start = path.pause(uniform(rng, 6.0, 9.0));
      const Point2 stop{uniform(rng, 0.5, 0.62), uniform(rng, -0.05, 0.12)};
      const Timestamp arrive = path.walk_to(stop, speed);
      const Timestamp touch_last = path.pause(uniform(rng, 1.8, 3.0));
      const Timestamp depart_end = path.walk_to({-0.9, 0.9}, speed);
      path.walk_to(seats[i], speed);
      path.pause(uniform(rng, 4.0, 6.0));
      const Timestamp t_exit = path.walk_to(room.door_b, speed);
      agent = path.finish();
      agent.intents.push_back({approach_start, arrive, Intent::Approach});
      agent.intents.push_back({arrive, touch_last, Intent::Interact});
      agent.intents.push_back({touch_last, depart_end, Intent::Depart});
      agent.touches.push_back({arrive, touch_last});
      agent.speech.push_back({snap(approach_start + (arrive - approach_start) / 3), arrive});
      scenario_end = std::max(scenario_end, t_exit);
    } else {
      path.pause(uniform(rng, 14.0, 18.0));
      const Timestamp t_exit = path.walk_to(room.door_b, speed);
      agent = path.finish();
      // Table chatter: short utterances with gaps.
      Timestamp s = agent.waypoints[1].t + snap_seconds(uniform(rng, 0.5, 2.0));
      while (s + 1'600'000 < agent.exit_time()) {
        const Timestamp e = s + snap_seconds(uniform(rng, 1.0, 2.2));
        agent.speech.push_back({s, e});
        s = e + snap_seconds(uniform(rng, 1.5, 4.0));
      }
      scenario_end = std::max(scenario_end, t_exit);
    }
    script.agents.push_back(std::move(agent));
  }
  script.duration = snap(scenario_end + snap_seconds(uniform(rng, 1.0, 2.0)));
  script.validate();
  return script;
}

ScenarioScript occlusion_approach(std::uint32_t variant) {
  std::mt19937_64 rng(0x0CC1ull * 2654435761u + variant);
  ScenarioScript script;
  script.name = "occlusion_approach";
  const Room& room = script.room;

  const double speed = uniform(rng, 0.75, 0.9);
  PathBuilder path(1, room.door_a, snap_seconds(uniform(rng, 0.4, 1.0)));
  // Tangential passes in front of the robot; the feet cross the line of sight
  // twice per stride near the closest point.
  path.walk_to({-1.7, -1.15}, speed);
  path.walk_to({1.65, -0.95}, speed);
  path.walk_to({-1.8, -0.8}, speed);
  path.walk_to({1.55, -0.7}, speed);
  const Timestamp approach_start = path.now();
  const Timestamp arrive = path.walk_to({0.52, 0.06}, speed);
  const Timestamp touch_last = path.pause(1.6);
  const Timestamp depart_end = path.walk_to({1.9, -1.2}, speed);
  const Timestamp t_exit = path.walk_to(room.door_c, speed);

  AgentScript agent = path.finish();
  agent.intents.push_back({approach_start, arrive, Intent::Approach});
  agent.intents.push_back({arrive, touch_last, Intent::Interact});
  agent.intents.push_back({touch_last, depart_end, Intent::Depart});
  agent.touches.push_back({arrive, touch_last});
  script.agents.push_back(std::move(agent));

  script.duration = snap(t_exit + snap_seconds(1.2));
  script.validate();
  return script;
}

std::vector<std::string> builtin_scenario_names() {
  return {"pass_by", "approach_interact_leave", "cards_multiuser", "occlusion_approach"};
}

ScenarioScript builtin_scenario(const std::string& name, std::uint32_t variant) {
  if (name == "pass_by") return pass_by(variant);
  if (name == "approach_interact_leave") return approach_interact_leave(variant);
  if (name == "cards_multiuser") return cards_multiuser(variant);
  if (name == "occlusion_approach") return occlusion_approach(variant);
  throw std::invalid_argument("unknown builtin scenario: " + name);
}

}  // namespace engage::sim
