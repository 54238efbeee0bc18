#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "engage/core/types.hpp"

namespace engage::fusion {

// Ordered timestamped records with a forward-only read cursor. One writer per
// channel; readers query ticks in increasing order.
template <typename Record>
class ChannelBuffer {
 public:
  ChannelBuffer() = default;

  explicit ChannelBuffer(std::vector<Record> records) : records_(std::move(records)) {
    for (std::size_t i = 1; i < records_.size(); ++i) {
      if (records_[i].t < records_[i - 1].t) {
        throw std::invalid_argument("non-monotone channel timestamps at record " +
                                    std::to_string(i) + " (t=" +
                                    std::to_string(records_[i].t) + ")");
      }
    }
  }

  void push(Record r) {
    if (!records_.empty() && r.t < records_.back().t) {
      throw std::invalid_argument("non-monotone channel timestamps (t=" +
                                  std::to_string(r.t) + ")");
    }
    records_.push_back(std::move(r));
  }

  // Most recent record with timestamp <= t and age within `staleness`.
  const Record* latest_at(Timestamp t, Timestamp staleness) {
    while (cursor_ < records_.size() && records_[cursor_].t <= t) ++cursor_;
    if (cursor_ == 0) return nullptr;
    const Record& r = records_[cursor_ - 1];
    if (t - r.t > staleness) return nullptr;
    return &r;
  }

  // All records with timestamp in (t - span, t].
  std::vector<const Record*> window_ending_at(Timestamp t, Timestamp span) const {
    std::vector<const Record*> out;
    for (const Record& r : records_) {
      if (r.t > t) break;
      if (r.t > t - span) out.push_back(&r);
    }
    return out;
  }

  const std::vector<Record>& records() const { return records_; }
  void reset_cursor() { cursor_ = 0; }

 private:
  std::vector<Record> records_;
  std::size_t cursor_ = 0;
};

}  // namespace engage::fusion
