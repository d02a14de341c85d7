#pragma once

#include <optional>
#include <string>

#include "diophlab/numeric/interval.hpp"

namespace diophlab {

// A certified enclosure, optionally carrying the exact rational value when
// it is known. The enclosure always contains the exact value.
class PrecisionReal {
 public:
  PrecisionReal() = default;
  explicit PrecisionReal(Interval enclosure) : enclosure_(std::move(enclosure)) {}
  PrecisionReal(const Rational& exact, mpfr_prec_t prec) : enclosure_(exact, prec), exact_(exact) {}

  const Interval& enclosure() const { return enclosure_; }
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_point() const { return exact_.has_value(); }
  mpfr_prec_t precision() const { return enclosure_.precision(); }

  bool contains_zero() const { return exact_ ? *exact_ == 0 : enclosure_.contains_zero(); }
  bool certainly_zero() const { return exact_ && *exact_ == 0; }
  bool certainly_nonzero() const { return exact_ ? *exact_ != 0 : !enclosure_.contains_zero(); }
  double mid_double() const { return exact_ ? exact_->get_d() : enclosure_.mid_double(); }
  double width_double() const { return exact_ ? 0.0 : enclosure_.width_double(); }
  // Certified: |x| < q (false when undecided).
  bool abs_less_than(const Rational& q) const;
  // Certified: |x| > q (false when undecided).
  bool abs_greater_than(const Rational& q) const;

  PrecisionReal operator-() const;
  friend PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b);
  PrecisionReal abs() const;

  std::string to_string(int digits = 20) const;

 private:
  Interval enclosure_;
  std::optional<Rational> exact_;
};

}  // namespace diophlab
