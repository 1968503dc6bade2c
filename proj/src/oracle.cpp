#include "gtank/oracle.hpp"

#include <string>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"
#include "gtank/fixed_gap.hpp"
#include "gtank/mfp.hpp"
#include "gtank/tank_estimators.hpp"

namespace gtank {

BigInt subset_count(const FactoryLayout& layout, std::int64_t k) {
  if (k < 0) return 0;
  return binomial(static_cast<std::uint64_t>(layout.total()), static_cast<std::uint64_t>(k));
}

void for_each_subset(const FactoryLayout& layout, std::int64_t k,
                     const std::function<void(const Sample&)>& visit, std::uint64_t budget) {
  const std::int64_t n = layout.total();
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidRange, "oracle sample size must lie in [1, " + std::to_string(n) + "]");
  }
  const BigInt count = subset_count(layout, k);
  if (count > BigInt(static_cast<unsigned long>(budget))) {
    fail(ErrorCode::BudgetExceeded, "enumeration would visit " + count.get_str() +
                                        " subsets, budget is " + std::to_string(budget));
  }

  std::vector<Serial> universe(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) universe[static_cast<std::size_t>(i)] = layout.serial_at(i);

  std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<Serial> serials(static_cast<std::size_t>(k));
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) serials[i] = universe[static_cast<std::size_t>(idx[i])];
    visit(Sample::from_sorted(serials));

    // Advance to the next combination in lexicographic order.
    std::int64_t pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (std::int64_t j = pos + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

OracleMoments<Rational> enumerate_oracle(const FactoryLayout& layout, std::int64_t k,
                                         const ExactStatistic& statistic, std::uint64_t budget) {
  Rational sum, sum_sq;
  BigInt visited = 0;
  for_each_subset(
      layout, k,
      [&](const Sample& s) {
        const Rational v = statistic(s);
        sum += v;
        sum_sq += v * v;
        ++visited;
      },
      budget);
  const Rational count(visited);
  const Rational mean = sum / count;
  return {visited, mean, sum_sq / count - mean * mean};
}

OracleMoments<double> enumerate_oracle_real(const FactoryLayout& layout, std::int64_t k,
                                            const RealStatistic& statistic, std::uint64_t budget) {
  double mean = 0.0, m2 = 0.0;
  std::uint64_t visited = 0;
  for_each_subset(
      layout, k,
      [&](const Sample& s) {
        const double v = statistic(s);
        ++visited;
        const double delta = v - mean;
        mean += delta / static_cast<double>(visited);
        m2 += delta * (v - mean);
      },
      budget);
  return {BigInt(static_cast<unsigned long>(visited)), mean, m2 / static_cast<double>(visited)};
}

namespace {

std::int64_t uniform_gap(const FactoryLayout& layout) {
  if (!layout.is_uniform() || layout.first_start() != 1) {
    fail(ErrorCode::InvalidConfig, "fixed-gap statistics need a uniform layout starting at 1");
  }
  return layout.gaps().empty() ? 0 : layout.gaps().front();
}

std::int64_t factories_hit(const FactoryLayout& layout, const Sample& s) {
  std::int64_t hit = 0, last = -1;
  for (const Serial v : s.serials()) {
    const std::int64_t f = layout.factory_of(v);
    if (f != last) {
      ++hit;
      last = f;
    }
  }
  return hit;
}

}  // namespace

std::vector<std::string> statistic_names() {
  return {"gtp",    "gtp-um", "max",       "min",          "spread", "miss", "empty-fraction",
          "fixed-gap", "fixed-gap-k1", "mfp", "mfp-min-unknown"};
}

bool statistic_is_exact(std::string_view name) {
  return name != "mfp" && name != "mfp-min-unknown";
}

ExactStatistic named_exact_statistic(std::string_view name, const FactoryLayout& layout) {
  if (name == "gtp") return gtp_value_exact;
  if (name == "gtp-um") return gtp_um_value_exact;
  if (name == "max") return [](const Sample& s) { return Rational(static_cast<long>(s.max())); };
  if (name == "min") return [](const Sample& s) { return Rational(static_cast<long>(s.min())); };
  if (name == "spread") return [](const Sample& s) { return Rational(static_cast<long>(s.spread())); };
  if (name == "miss") {
    return [layout](const Sample& s) {
      return Rational(factories_hit(layout, s) < layout.factories() ? 1 : 0);
    };
  }
  if (name == "empty-fraction") {
    return [layout](const Sample& s) {
      return ratio(layout.factories() - factories_hit(layout, s), layout.factories());
    };
  }
  if (name == "fixed-gap" || name == "fixed-gap-k1") {
    const std::int64_t gap = uniform_gap(layout);
    const std::int64_t l = layout.factories();
    if (name == "fixed-gap-k1") {
      return [l, gap](const Sample& s) { return ratio(2 * s.max() - gap * (l - 1) - 1, l); };
    }
    return [l, gap](const Sample& s) {
      const std::int64_t k = s.size();
      // (1/l)((k+1)M/k - G l + G(k+1)/(2k) - 1) over the common denominator 2kl.
      return ratio(2 * (k + 1) * s.max() - 2 * k * gap * l + gap * (k + 1) - 2 * k, 2 * k * l);
    };
  }
  fail(ErrorCode::InvalidConfig, "no exact statistic named '" + std::string(name) + "'");
}

RealStatistic named_real_statistic(std::string_view name, const FactoryLayout& layout) {
  if (name == "mfp" || name == "mfp-min-unknown") {
    const bool lower_known = name == "mfp";
    const std::int64_t l = layout.factories();
    return [l, lower_known](const Sample& s) { return mfp_estimate(s, l, lower_known).value; };
  }
  ExactStatistic exact = named_exact_statistic(name, layout);
  return [exact = std::move(exact)](const Sample& s) { return exact(s).to_double(); };
}

}  // namespace gtank
