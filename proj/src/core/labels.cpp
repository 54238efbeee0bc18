#include "engage/core/types.hpp"

namespace engage {

const char* to_string(Channel c) {
  switch (c) {
    case Channel::Laser: return "laser";
    case Channel::Skeleton: return "skeleton";
    case Channel::Face: return "face";
    case Channel::Audio: return "audio";
  }
  return "?";
}

std::optional<Channel> channel_from_string(std::string_view s) {
  for (Channel c : {Channel::Laser, Channel::Skeleton, Channel::Face, Channel::Audio}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

const char* to_string(Label5 label) {
  switch (label) {
    case Label5::NoOne: return "noOne";
    case Label5::Someone: return "someone";
    case Label5::WantInteraction: return "wantInteraction";
    case Label5::Interaction: return "interaction";
    case Label5::LeaveInteraction: return "leaveInteraction";
  }
  return "?";
}

const char* to_string(Label3 label) {
  switch (label) {
    case Label3::NoOne: return "noOne";
    case Label3::Someone: return "someone";
    case Label3::WantInteraction: return "wantInteraction";
  }
  return "?";
}

std::optional<Label5> label5_from_string(std::string_view s) {
  for (Label5 l : {Label5::NoOne, Label5::Someone, Label5::WantInteraction, Label5::Interaction,
                   Label5::LeaveInteraction}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

std::optional<Label3> relabel_to_3(Label5 label) {
  switch (label) {
    case Label5::NoOne: return Label3::NoOne;
    case Label5::Someone: return Label3::Someone;
    case Label5::WantInteraction: return Label3::WantInteraction;
    case Label5::Interaction: return std::nullopt;
    case Label5::LeaveInteraction: return Label3::Someone;
  }
  return std::nullopt;
}

}  // namespace engage
