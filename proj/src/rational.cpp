#include "gtank/rational.hpp"

#include "gtank/error.hpp"

namespace gtank {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidRange, "rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) fail(ErrorCode::InvalidRange, "rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_str();
}

Rational ratio(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

std::string to_string(const BigInt& value) { return value.get_str(); }

}  // namespace gtank
