#include "gtank/layout.hpp"

#include <algorithm>
#include <string>

#include "gtank/error.hpp"

namespace gtank {

FactoryLayout build_layout(std::vector<std::int64_t> sizes, std::vector<std::int64_t> gaps,
                           Serial first_start) {
  if (sizes.empty()) fail(ErrorCode::NonPositiveSize, "layout needs at least one factory");
  if (gaps.size() != sizes.size() - 1) {
    fail(ErrorCode::DimensionMismatch, "layout with " + std::to_string(sizes.size()) +
                                           " factories needs " + std::to_string(sizes.size() - 1) +
                                           " gaps, got " + std::to_string(gaps.size()));
  }
  for (const auto s : sizes) {
    if (s < 1) fail(ErrorCode::NonPositiveSize, "factory size must be >= 1, got " + std::to_string(s));
  }
  for (const auto g : gaps) {
    if (g < 0) fail(ErrorCode::InvalidRange, "gap must be >= 0, got " + std::to_string(g));
  }
  if (first_start < 1) fail(ErrorCode::InvalidRange, "first serial must be >= 1");

  FactoryLayout layout;
  Serial start = first_start;
  std::int64_t before = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Serial end = start + sizes[i] - 1;
    layout.intervals_.push_back({start, end});
    layout.cumulative_.push_back(before);
    before += sizes[i];
    if (i < gaps.size()) start = end + gaps[i] + 1;
  }
  layout.total_ = before;
  layout.sizes_ = std::move(sizes);
  layout.gaps_ = std::move(gaps);
  return layout;
}

Serial FactoryLayout::serial_at(std::int64_t index) const {
  if (index < 0 || index >= total_) {
    fail(ErrorCode::InvalidRange, "layout index " + std::to_string(index) + " out of range");
  }
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), index);
  const auto f = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return intervals_[f].start + (index - cumulative_[f]);
}

std::int64_t FactoryLayout::factory_of(Serial serial) const {
  const auto it = std::upper_bound(intervals_.begin(), intervals_.end(), serial,
                                   [](Serial s, const Interval& iv) { return s < iv.start; });
  if (it == intervals_.begin()) return -1;
  const auto f = static_cast<std::int64_t>(it - intervals_.begin()) - 1;
  return serial <= intervals_[static_cast<std::size_t>(f)].end ? f : -1;
}

bool FactoryLayout::is_uniform() const {
  const bool sizes_equal = std::all_of(sizes_.begin(), sizes_.end(),
                                       [&](std::int64_t s) { return s == sizes_.front(); });
  const bool gaps_equal =
      gaps_.empty() || std::all_of(gaps_.begin(), gaps_.end(),
                                   [&](std::int64_t g) { return g == gaps_.front(); });
  return sizes_equal && gaps_equal;
}

}  // namespace gtank
