#pragma once

#include <cstdint>

#include "gtank/estimate.hpp"
#include "gtank/sample.hpp"

namespace gtank {

/// Splits the sample into `factories` runs at the largest gaps between
/// consecutive serials (ties go to the leftmost gap), estimates every good
/// run and patches singleton runs with the pooled per-serial estimate.
/// Throws TooFewSamples when k < l, InvalidRange when l < 2, and
/// DegenerateSplit when no run is usable.
MfpSplit split_at_largest_gaps(const Sample& sample, std::int64_t factories,
                               bool lower_known = true);

/// Total-production estimate; diagnostics carry the MfpSplit.
Estimate mfp_estimate(const Sample& sample, std::int64_t factories, bool lower_known = true);

}  // namespace gtank
