#include "gtank/mfp.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gtank/error.hpp"
#include "gtank/tank_estimators.hpp"

namespace gtank {

MfpSplit split_at_largest_gaps(const Sample& sample, std::int64_t factories, bool lower_known) {
  if (factories < 2) {
    fail(ErrorCode::InvalidRange, "multiple-factory split needs at least 2 factories");
  }
  const auto serials = sample.serials();
  const std::int64_t k = sample.size();
  if (k < factories) {
    fail(ErrorCode::TooFewSamples, "need at least " + std::to_string(factories) +
                                       " serials to split into that many factories, got " +
                                       std::to_string(k));
  }

  std::vector<std::int64_t> order(static_cast<std::size_t>(k - 1));
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps lower indices first among equal gaps.
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return serials[a + 1] - serials[a] > serials[b + 1] - serials[b];
  });
  order.resize(static_cast<std::size_t>(factories - 1));
  std::sort(order.begin(), order.end());

  MfpSplit split;
  split.lower_known = lower_known;
  split.chosen_gap_positions = order;
  std::size_t begin = 0;
  for (std::size_t cut = 0; cut <= order.size(); ++cut) {
    const std::size_t end =
        cut < order.size() ? static_cast<std::size_t>(order[cut]) + 1 : serials.size();
    split.sub_samples.push_back(Sample::from_sorted({serials.begin() + begin, serials.begin() + end}));
    begin = end;
  }

  split.sub_estimates.assign(split.sub_samples.size(), 0.0);
  for (std::size_t i = 0; i < split.sub_samples.size(); ++i) {
    const Sample& part = split.sub_samples[i];
    const int index = static_cast<int>(i) + 1;
    double estimate = 0.0;
    if (i == 0 && lower_known) {
      estimate = gtp_estimate(part).value;
    } else if (part.size() >= 2) {
      estimate = gtp_um_estimate(part).value;
    } else {
      split.bad_indices.push_back(index);
      if (i == 0) split.first_routed_to_bad = true;
      continue;
    }
    split.good_indices.push_back(index);
    split.sub_estimates[i] = estimate;
    split.n_good_sum += estimate;
    split.k_good_sum += part.size();
  }

  if (split.k_good_sum == 0) {
    fail(ErrorCode::DegenerateSplit,
         "every sub-sample is a singleton and the first factory's minimum is unknown");
  }
  const double patched = split.n_good_sum / static_cast<double>(split.k_good_sum);
  for (const int index : split.bad_indices) split.sub_estimates[index - 1] = patched;
  return split;
}

Estimate mfp_estimate(const Sample& sample, std::int64_t factories, bool lower_known) {
  MfpSplit split = split_at_largest_gaps(sample, factories, lower_known);
  double total = 0.0;
  for (const double v : split.sub_estimates) total += v;
  return {total, Method::Mfp, std::move(split)};
}

}  // namespace gtank
