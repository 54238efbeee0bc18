#include "engage/sim/script.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace engage::sim {

namespace {

Timestamp seconds_to_us(double s) { return static_cast<Timestamp>(std::llround(s * 1e6)); }

double us_to_seconds(Timestamp t) { return static_cast<double>(t) / 1e6; }

}  // namespace

std::vector<WallSegment> Room::walls() const {
  std::vector<WallSegment> out;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    out.push_back({polygon[i], polygon[(i + 1) % polygon.size()]});
  }
  return out;
}

bool Room::contains(const Point2& p) const {
  // Even-odd ray crossing.
  bool inside = false;
  for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

Room Room::default_room() {
  Room r;
  // 6 m x 5 m with a 2 m x 2.5 m notch cut out of the north-east corner.
  r.polygon = {{-3.0, -2.5}, {3.0, -2.5}, {3.0, 0.0}, {1.0, 0.0}, {1.0, 2.5}, {-3.0, 2.5}};
  r.door_a = {-2.85, 0.0};
  r.door_b = {-1.0, 2.35};
  r.door_c = {1.5, -2.35};
  return r;
}

const char* to_string(Intent i) {
  switch (i) {
    case Intent::Wander: return "wander";
    case Intent::Approach: return "approach";
    case Intent::Interact: return "interact";
    case Intent::Depart: return "depart";
  }
  return "?";
}

std::optional<Intent> intent_from_string(std::string_view s) {
  for (Intent i : {Intent::Wander, Intent::Approach, Intent::Interact, Intent::Depart}) {
    if (s == to_string(i)) return i;
  }
  return std::nullopt;
}

Point2 AgentScript::position_at(Timestamp t) const {
  if (waypoints.empty()) return {};
  if (t <= waypoints.front().t) return waypoints.front().p;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (t <= waypoints[i].t) {
      const Waypoint& a = waypoints[i - 1];
      const Waypoint& b = waypoints[i];
      if (b.t == a.t) return b.p;
      const double u = static_cast<double>(t - a.t) / static_cast<double>(b.t - a.t);
      return {a.p.x + u * (b.p.x - a.p.x), a.p.y + u * (b.p.y - a.p.y)};
    }
  }
  return waypoints.back().p;
}

Point2 AgentScript::velocity_at(Timestamp t) const {
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (t <= waypoints[i].t) {
      const Waypoint& a = waypoints[i - 1];
      const Waypoint& b = waypoints[i];
      if (t < a.t || b.t == a.t) return {0.0, 0.0};
      const double dt = static_cast<double>(b.t - a.t) / 1e6;
      return {(b.p.x - a.p.x) / dt, (b.p.y - a.p.y) / dt};
    }
  }
  return {0.0, 0.0};
}

Intent AgentScript::intent_at(Timestamp t) const {
  for (const IntentSegment& seg : intents) {
    if (t >= seg.start && t < seg.end) return seg.intent;
  }
  return Intent::Wander;
}

void ScenarioScript::validate() const {
  if (duration <= 0) throw std::invalid_argument("script duration must be positive");
  for (const AgentScript& agent : agents) {
    if (agent.waypoints.size() < 2) {
      throw std::invalid_argument("agent " + std::to_string(agent.id) +
                                  " needs at least two waypoints");
    }
    for (std::size_t i = 1; i < agent.waypoints.size(); ++i) {
      if (agent.waypoints[i].t < agent.waypoints[i - 1].t) {
        throw std::invalid_argument("agent " + std::to_string(agent.id) +
                                    " has unordered waypoints");
      }
    }
    for (const Waypoint& w : agent.waypoints) {
      if (!room.contains(w.p)) {
        std::ostringstream msg;
        msg << "agent " << agent.id << " waypoint (" << w.p.x << ", " << w.p.y
            << ") lies outside the room";
        throw std::invalid_argument(msg.str());
      }
    }
    for (std::size_t i = 0; i < agent.intents.size(); ++i) {
      const IntentSegment& a = agent.intents[i];
      if (a.start >= a.end) throw std::invalid_argument("empty intent segment");
      for (std::size_t j = i + 1; j < agent.intents.size(); ++j) {
        const IntentSegment& b = agent.intents[j];
        if (a.start < b.end && b.start < a.end) {
          throw std::invalid_argument("overlapping intent segments for agent " +
                                      std::to_string(agent.id));
        }
      }
    }
  }
}

ScenarioScript parse_script(std::istream& in) {
  ScenarioScript script;
  AgentScript* current = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string directive;
    if (!(ls >> directive)) continue;

    auto need_agent = [&]() -> AgentScript& {
      if (current == nullptr) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": directive before any agent");
      }
      return *current;
    };

    if (directive == "scenario") {
      ls >> script.name;
    } else if (directive == "duration") {
      double s = 0.0;
      ls >> s;
      script.duration = seconds_to_us(s);
    } else if (directive == "agent") {
      AgentScript agent;
      ls >> agent.id;
      script.agents.push_back(agent);
      current = &script.agents.back();
    } else if (directive == "waypoint") {
      double t = 0.0;
      Point2 p;
      ls >> t >> p.x >> p.y;
      need_agent().waypoints.push_back({seconds_to_us(t), p});
    } else if (directive == "intent") {
      double s = 0.0, e = 0.0;
      std::string kind;
      ls >> s >> e >> kind;
      auto intent = intent_from_string(kind);
      if (!intent) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": unknown intent " + kind);
      }
      need_agent().intents.push_back({seconds_to_us(s), seconds_to_us(e), *intent});
    } else if (directive == "speech") {
      double s = 0.0, e = 0.0;
      ls >> s >> e;
      need_agent().speech.push_back({seconds_to_us(s), seconds_to_us(e)});
    } else if (directive == "touch") {
      double s = 0.0, e = 0.0;
      ls >> s >> e;
      need_agent().touches.push_back({seconds_to_us(s), seconds_to_us(e)});
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": unknown directive " + directive);
    }
    if (ls.fail()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": malformed values");
    }
  }
  script.validate();
  return script;
}

void write_script(std::ostream& out, const ScenarioScript& script) {
  out.precision(9);
  out << "scenario " << script.name << '\n';
  out << "duration " << us_to_seconds(script.duration) << '\n';
  for (const AgentScript& agent : script.agents) {
    out << "agent " << agent.id << '\n';
    for (const Waypoint& w : agent.waypoints) {
      out << "waypoint " << us_to_seconds(w.t) << ' ' << w.p.x << ' ' << w.p.y << '\n';
    }
    for (const IntentSegment& seg : agent.intents) {
      out << "intent " << us_to_seconds(seg.start) << ' ' << us_to_seconds(seg.end) << ' '
          << to_string(seg.intent) << '\n';
    }
    for (const TimeInterval& s : agent.speech) {
      out << "speech " << us_to_seconds(s.start) << ' ' << us_to_seconds(s.end) << '\n';
    }
    for (const TimeInterval& s : agent.touches) {
      out << "touch " << us_to_seconds(s.start) << ' ' << us_to_seconds(s.end) << '\n';
    }
  }
}

}  // namespace engage::sim
