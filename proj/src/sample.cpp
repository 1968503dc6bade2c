#include "gtank/sample.hpp"

#include <algorithm>
#include <string>

#include "gtank/error.hpp"

namespace gtank {

Sample Sample::from_sorted(std::vector<Serial> serials) {
  if (serials.empty()) fail(ErrorCode::EmptySample, "sample must contain at least one serial");
  if (serials.front() < 1) {
    fail(ErrorCode::InvalidSample,
         "serial numbers must be >= 1, got " + std::to_string(serials.front()));
  }
  for (std::size_t i = 1; i < serials.size(); ++i) {
    if (serials[i] <= serials[i - 1]) {
      fail(ErrorCode::InvalidSample, serials[i] == serials[i - 1]
                                         ? "duplicate serial " + std::to_string(serials[i])
                                         : "serials must be strictly increasing");
    }
  }
  return Sample(std::move(serials));
}

Sample Sample::from_unsorted(std::vector<Serial> serials) {
  std::sort(serials.begin(), serials.end());
  return from_sorted(std::move(serials));
}

Sample Sample::shifted(Serial offset) const {
  std::vector<Serial> out(serials_.begin(), serials_.end());
  for (auto& s : out) s += offset;
  return from_sorted(std::move(out));
}

}  // namespace gtank
