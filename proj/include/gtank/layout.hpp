#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gtank/sample.hpp"

namespace gtank {

/// Ground-truth set of valid serials: consecutive runs (factories) separated by gaps.
class FactoryLayout {
 public:
  struct Interval {
    Serial start = 1;
    Serial end = 1;  // inclusive
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  std::span<const std::int64_t> sizes() const { return sizes_; }
  std::span<const std::int64_t> gaps() const { return gaps_; }
  std::span<const Interval> intervals() const { return intervals_; }
  Serial first_start() const { return intervals_.front().start; }
  std::int64_t factories() const { return static_cast<std::int64_t>(sizes_.size()); }
  std::int64_t total() const { return total_; }
  Serial last_serial() const { return intervals_.back().end; }

  /// Serial at 0-based position `index` of the gap-free enumeration of T.
  Serial serial_at(std::int64_t index) const;

  /// 0-based factory index of `serial`, or -1 when the serial is not in T.
  std::int64_t factory_of(Serial serial) const;

  bool contains(Serial serial) const { return factory_of(serial) >= 0; }

  /// True when all sizes are equal and all gaps are equal.
  bool is_uniform() const;

  friend FactoryLayout build_layout(std::vector<std::int64_t> sizes, std::vector<std::int64_t> gaps,
                                    Serial first_start);

 private:
  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> gaps_;
  std::vector<Interval> intervals_;
  std::vector<std::int64_t> cumulative_;  // serials in factories before i
  std::int64_t total_ = 0;
};

/// Throws DimensionMismatch when |gaps| != |sizes| - 1 and NonPositiveSize for
/// empty or non-positive sizes; negative gaps or first_start < 1 are InvalidRange.
FactoryLayout build_layout(std::vector<std::int64_t> sizes, std::vector<std::int64_t> gaps,
                           Serial first_start = 1);

}  // namespace gtank
