#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engage/core/types.hpp"

namespace engage::fusion {

enum class EventKind : std::uint8_t {
  TouchFirst,
  TouchLast,
  Enter,
  Exit,
  ApproachStart,
  ApproachEnd,
  DepartStart,
  DepartEnd,
};

const char* to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view s);

struct TimelineEvent {
  Timestamp t = 0;
  EventKind kind = EventKind::Enter;
  int who = 0;
};

struct Interval {
  Timestamp start = 0;
  Timestamp end = 0;
  int who = 0;
};

// The experimenter's annotation timeline: presence, approach and departure
// intervals per participant plus the tablet touch intervals.
class AnnotationTimeline {
 public:
  // Pairs start/end events into intervals; throws on malformed or
  // contradictory (overlapping interaction) intervals.
  static AnnotationTimeline from_events(const std::vector<TimelineEvent>& events);

  // interaction = [first_touch, last_click]; wantInteraction = [approach);
  // leaveInteraction = (depart]; someone = remaining presence; noOne = rest.
  Label5 label_at(Timestamp t) const;

  const std::vector<Interval>& presence() const { return presence_; }
  const std::vector<Interval>& approaches() const { return approaches_; }
  const std::vector<Interval>& departures() const { return departures_; }
  const std::vector<Interval>& interactions() const { return interactions_; }
  const std::vector<TimelineEvent>& events() const { return events_; }

 private:
  std::vector<TimelineEvent> events_;
  std::vector<Interval> presence_;
  std::vector<Interval> approaches_;
  std::vector<Interval> departures_;
  std::vector<Interval> interactions_;
};

}  // namespace engage::fusion
