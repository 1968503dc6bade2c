#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gtank {

using Serial = std::int64_t;

/// Sorted, duplicate-free set of observed serial numbers (all >= 1).
class Sample {
 public:
  /// Validates strict ordering and positivity. Throws Error(InvalidSample/EmptySample).
  static Sample from_sorted(std::vector<Serial> serials);

  /// Sorts; duplicates are rejected rather than collapsed.
  static Sample from_unsorted(std::vector<Serial> serials);

  std::span<const Serial> serials() const { return serials_; }
  std::int64_t size() const { return static_cast<std::int64_t>(serials_.size()); }
  Serial max() const { return serials_.back(); }
  Serial min() const { return serials_.front(); }
  Serial spread() const { return max() - min(); }

  /// Adds `offset` to every serial; the result must stay positive.
  Sample shifted(Serial offset) const;

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  explicit Sample(std::vector<Serial> serials) : serials_(std::move(serials)) {}

  std::vector<Serial> serials_;
};

}  // namespace gtank
