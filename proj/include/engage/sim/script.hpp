#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "engage/core/types.hpp"
#include "engage/laser/scan.hpp"

namespace engage::sim {

using laser::Point2;

struct WallSegment {
  Point2 a;
  Point2 b;
};

// L-shaped experimentation room with the robot at the origin and three access
// doors. The polygon is closed; walls derive from consecutive vertices.
struct Room {
  std::vector<Point2> polygon;
  Point2 door_a;
  Point2 door_b;
  Point2 door_c;

  std::vector<WallSegment> walls() const;
  bool contains(const Point2& p) const;

  static Room default_room();
};

struct Waypoint {
  Timestamp t = 0;
  Point2 p;
};

enum class Intent : std::uint8_t { Wander, Approach, Interact, Depart };

const char* to_string(Intent i);
std::optional<Intent> intent_from_string(std::string_view s);

struct IntentSegment {
  Timestamp start = 0;
  Timestamp end = 0;
  Intent intent = Intent::Wander;
};

struct TimeInterval {
  Timestamp start = 0;
  Timestamp end = 0;
};

struct AgentScript {
  int id = 0;
  std::vector<Waypoint> waypoints;      // piecewise-linear path, time-ordered
  std::vector<IntentSegment> intents;   // non-overlapping
  std::vector<TimeInterval> speech;
  std::vector<TimeInterval> touches;    // tablet touch intervals

  Timestamp enter_time() const { return waypoints.front().t; }
  Timestamp exit_time() const { return waypoints.back().t; }
  bool present_at(Timestamp t) const { return t >= enter_time() && t < exit_time(); }
  Point2 position_at(Timestamp t) const;
  Point2 velocity_at(Timestamp t) const;  // m/s on the current segment
  Intent intent_at(Timestamp t) const;
};

struct ScenarioScript {
  std::string name;
  Room room = Room::default_room();
  std::vector<AgentScript> agents;
  Timestamp duration = 0;

  // Throws when waypoints leave the room, intents overlap or times are
  // unordered.
  void validate() const;
};

// Declarative text format: one directive per line
//   scenario <name>
//   duration <seconds>
//   agent <id>
//   waypoint <seconds> <x> <y>
//   intent <start_s> <end_s> wander|approach|interact|depart
//   speech <start_s> <end_s>
//   touch <first_s> <last_s>
ScenarioScript parse_script(std::istream& in);
void write_script(std::ostream& out, const ScenarioScript& script);

}  // namespace engage::sim
