#include "engage/fusion/timeline.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace engage::fusion {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::TouchFirst: return "touch_first";
    case EventKind::TouchLast: return "touch_last";
    case EventKind::Enter: return "enter";
    case EventKind::Exit: return "exit";
    case EventKind::ApproachStart: return "approach_start";
    case EventKind::ApproachEnd: return "approach_end";
    case EventKind::DepartStart: return "depart_start";
    case EventKind::DepartEnd: return "depart_end";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) {
  for (EventKind k : {EventKind::TouchFirst, EventKind::TouchLast, EventKind::Enter,
                      EventKind::Exit, EventKind::ApproachStart, EventKind::ApproachEnd,
                      EventKind::DepartStart, EventKind::DepartEnd}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

// Pairs (start, end) event kinds per participant into intervals, in order.
std::vector<Interval> pair_events(const std::vector<TimelineEvent>& events, EventKind start,
                                  EventKind end) {
  std::vector<Interval> out;
  std::map<int, std::optional<Timestamp>> open;
  for (const TimelineEvent& e : events) {
    if (e.kind == start) {
      if (open[e.who].has_value()) {
        throw std::invalid_argument(std::string("unclosed ") + to_string(start) +
                                    " for participant " + std::to_string(e.who));
      }
      open[e.who] = e.t;
    } else if (e.kind == end) {
      auto& slot = open[e.who];
      if (!slot.has_value()) {
        throw std::invalid_argument(std::string("stray ") + to_string(end) +
                                    " for participant " + std::to_string(e.who));
      }
      if (*slot >= e.t) {
        throw std::invalid_argument("malformed interval: start >= end at t=" +
                                    std::to_string(e.t));
      }
      out.push_back({*slot, e.t, e.who});
      slot.reset();
    }
  }
  for (const auto& [who, slot] : open) {
    if (slot.has_value()) {
      throw std::invalid_argument("interval left open for participant " +
                                  std::to_string(who));
    }
  }
  return out;
}

}  // namespace

AnnotationTimeline AnnotationTimeline::from_events(const std::vector<TimelineEvent>& events) {
  AnnotationTimeline tl;
  tl.events_ = events;
  std::stable_sort(tl.events_.begin(), tl.events_.end(),
                   [](const TimelineEvent& a, const TimelineEvent& b) { return a.t < b.t; });
  tl.presence_ = pair_events(tl.events_, EventKind::Enter, EventKind::Exit);
  tl.approaches_ = pair_events(tl.events_, EventKind::ApproachStart, EventKind::ApproachEnd);
  tl.departures_ = pair_events(tl.events_, EventKind::DepartStart, EventKind::DepartEnd);
  tl.interactions_ = pair_events(tl.events_, EventKind::TouchFirst, EventKind::TouchLast);

  // Two fingers cannot own the tablet at once: overlapping interactions are
  // contradictory annotations.
  for (std::size_t i = 0; i < tl.interactions_.size(); ++i) {
    for (std::size_t j = i + 1; j < tl.interactions_.size(); ++j) {
      const Interval& a = tl.interactions_[i];
      const Interval& b = tl.interactions_[j];
      if (a.start <= b.end && b.start <= a.end) {
        throw std::invalid_argument("overlapping interaction intervals");
      }
    }
  }
  return tl;
}

Label5 AnnotationTimeline::label_at(Timestamp t) const {
  for (const Interval& i : interactions_) {
    if (t >= i.start && t <= i.end) return Label5::Interaction;  // closed, to the tick
  }
  for (const Interval& i : approaches_) {
    if (t >= i.start && t < i.end) return Label5::WantInteraction;
  }
  for (const Interval& i : departures_) {
    if (t > i.start && t <= i.end) return Label5::LeaveInteraction;
  }
  for (const Interval& i : presence_) {
    if (t >= i.start && t < i.end) return Label5::Someone;
  }
  return Label5::NoOne;
}

}  // namespace engage::fusion
