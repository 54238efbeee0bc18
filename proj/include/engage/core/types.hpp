#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace engage {

// Microseconds since stream epoch. Integer so that replay is bit-exact.
using Timestamp = std::int64_t;

// Master synchronization period: one telemeter scan interval (12.5 Hz).
inline constexpr Timestamp kTickUs = 80'000;

enum class Channel : std::uint8_t { Laser = 0, Skeleton = 1, Face = 2, Audio = 3 };
inline constexpr std::size_t kChannelCount = 4;

const char* to_string(Channel c);
std::optional<Channel> channel_from_string(std::string_view s);

enum class Label5 : std::uint8_t {
  NoOne = 0,
  Someone = 1,
  WantInteraction = 2,
  Interaction = 3,
  LeaveInteraction = 4,
};
inline constexpr std::size_t kLabel5Count = 5;

enum class Label3 : std::uint8_t {
  NoOne = 0,
  Someone = 1,
  WantInteraction = 2,
};
inline constexpr std::size_t kLabel3Count = 3;

const char* to_string(Label5 label);
const char* to_string(Label3 label);
std::optional<Label5> label5_from_string(std::string_view s);

// 3-class relabeling: interaction frames are dropped entirely,
// leaveInteraction folds into someone, the rest map to themselves.
std::optional<Label3> relabel_to_3(Label5 label);

// Feature values aligned to a manifest edition plus the per-channel
// availability mask for the tick the vector was assembled at.
struct FeatureVector {
  std::vector<double> values;
  std::array<bool, kChannelCount> present{};

  bool channel_present(Channel c) const { return present[static_cast<std::size_t>(c)]; }
  void set_present(Channel c, bool on) { present[static_cast<std::size_t>(c)] = on; }
};

// One 80 ms master tick: full feature vector and a unique label.
struct SyncedFrame {
  Timestamp t = 0;
  FeatureVector features;
  Label5 label = Label5::NoOne;
};

}  // namespace engage
