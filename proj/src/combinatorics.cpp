#include "gtank/combinatorics.hpp"

#include <string>

#include "gtank/error.hpp"

namespace gtank {

namespace {

BigInt choose_signed(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) return 0;
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
}

void require_order_stat_range(std::int64_t N, std::int64_t k, std::int64_t b,
                              const char* name) {
  if (!(N >= k && k >= b && b >= 1)) {
    fail(ErrorCode::InvalidRange,
         std::string(name) + " requires N >= k >= b >= 1, got N=" + std::to_string(N) +
             " k=" + std::to_string(k) + " b=" + std::to_string(b));
  }
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // After step i the accumulator holds C(n-k+i, i), so every division is exact.
  BigInt result = 1;
  const std::uint64_t base = n - k;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= static_cast<unsigned long>(base + i);
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return result;
}

Sides<BigInt> hockey_stick_sides(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < r) {
    fail(ErrorCode::InvalidRange, "hockey stick requires n >= r >= 0, got n=" +
                                      std::to_string(n) + " r=" + std::to_string(r));
  }
  BigInt lhs = 0;
  for (std::int64_t i = r; i <= n; ++i) lhs += choose_signed(i, r);
  return {lhs, choose_signed(n + 1, r + 1)};
}

Sides<Rational> identity_I_sides(std::int64_t N, std::int64_t k, std::int64_t b) {
  require_order_stat_range(N, k, b, "identity I");
  BigInt sum = 0;
  for (std::int64_t m = k - b + 1; m <= N - b + 1; ++m) {
    sum += BigInt(static_cast<long>(m)) * choose_signed(m - 1, k - b) * choose_signed(N - m, b - 1);
  }
  Rational lhs(sum, choose_signed(N, k));
  Rational rhs = ratio((N + 1) * (k - b + 1), k + 1);
  return {lhs, rhs};
}

Sides<Rational> identity_II_sides(std::int64_t N, std::int64_t k, std::int64_t b) {
  require_order_stat_range(N, k, b, "identity II");
  BigInt sum = 0;
  for (std::int64_t m = k - b + 1; m <= N - b + 1; ++m) {
    const BigInt mm(static_cast<long>(m));
    sum += mm * mm * choose_signed(m - 1, k - b) * choose_signed(N - m, b - 1);
  }
  Rational lhs(sum, choose_signed(N, k));
  const BigInt top = BigInt(static_cast<long>(k - b + 1)) * (k - b + 2) * (N + 2) * (N + 1);
  const BigInt bottom = BigInt(static_cast<long>(k + 2)) * (k + 1);
  Rational rhs = Rational(top, bottom) - ratio((N + 1) * (k - b + 1), k + 1);
  return {lhs, rhs};
}

Sides<BigInt> identity_III_sides(std::int64_t a, std::int64_t b, std::int64_t k) {
  if (a < 0 || b < 0 || k < 0) {
    fail(ErrorCode::InvalidRange, "identity III requires a, b, k >= 0");
  }
  BigInt rhs = 0;
  for (std::int64_t i = 0; i <= k; ++i) {
    rhs += choose_signed(a + i, a) * choose_signed(b + k - i, b);
  }
  return {choose_signed(a + b + k + 1, a + b + 1), rhs};
}

}  // namespace gtank
