#include "diophlab/numeric/precision_real.hpp"

#include <algorithm>

#include "diophlab/core/error.hpp"

namespace diophlab {

namespace {
mpfr_prec_t joint(const PrecisionReal& a, const PrecisionReal& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

bool PrecisionReal::abs_less_than(const Rational& q) const {
  if (exact_) return diophlab::abs(*exact_) < q;
  return enclosure_.abs().less_than(q);
}

bool PrecisionReal::abs_greater_than(const Rational& q) const {
  if (exact_) return diophlab::abs(*exact_) > q;
  return enclosure_.abs().greater_than(q);
}

PrecisionReal PrecisionReal::operator-() const {
  if (exact_) return PrecisionReal(Rational(-*exact_), precision());
  return PrecisionReal(-enclosure_);
}

PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b) {
  if (a.exact_ && b.exact_) return PrecisionReal(Rational(*a.exact_ + *b.exact_), joint(a, b));
  return PrecisionReal(a.enclosure_ + b.enclosure_);
}

PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b) {
  if (a.exact_ && b.exact_) return PrecisionReal(Rational(*a.exact_ - *b.exact_), joint(a, b));
  return PrecisionReal(a.enclosure_ - b.enclosure_);
}

PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b) {
  if (a.exact_ && b.exact_) return PrecisionReal(Rational(*a.exact_ * *b.exact_), joint(a, b));
  if ((a.exact_ && *a.exact_ == 0) || (b.exact_ && *b.exact_ == 0)) return PrecisionReal(Rational(0), joint(a, b));
  return PrecisionReal(a.enclosure_ * b.enclosure_);
}

PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b) {
  if (b.exact_ && *b.exact_ == 0) fail(ErrorCode::InvalidArgument, "division by exact zero");
  if (a.exact_ && b.exact_) return PrecisionReal(Rational(*a.exact_ / *b.exact_), joint(a, b));
  return PrecisionReal(a.enclosure_ / b.enclosure_);
}

PrecisionReal PrecisionReal::abs() const {
  if (exact_) return PrecisionReal(diophlab::abs(*exact_), precision());
  return PrecisionReal(enclosure_.abs());
}

std::string PrecisionReal::to_string(int digits) const {
  if (exact_) return diophlab::to_string(*exact_);
  return enclosure_.to_string(digits);
}

}  // namespace diophlab
