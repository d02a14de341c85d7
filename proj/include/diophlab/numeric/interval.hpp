#pragma once

#include <mpfr.h>

#include <string>

#include "diophlab/numeric/integer.hpp"

namespace diophlab {

// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

// Closed interval [lo, hi] with dyadic endpoints; every operation rounds
// outward so the true value stays enclosed.
class Interval {
 public:
  Interval();
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);

  static Interval pi(mpfr_prec_t prec);
  static Interval euler(mpfr_prec_t prec);
  static Interval hull(const Interval& a, const Interval& b);
  // Both arguments must enclose the same real number.
  static Interval intersect(const Interval& a, const Interval& b);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return prec_; }

  Rational lo_rational() const { return lo_.to_rational(); }
  Rational hi_rational() const { return hi_.to_rational(); }
  Rational mid_rational() const;
  Rational width() const;
  double mid_double() const;
  double width_double() const;
  // width <= 2^-bits
  bool width_within(long bits) const;

  bool is_point() const;
  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool contains(const Interval& inner) const;
  bool positive() const;
  bool negative() const;
  bool less_than(const Rational& q) const;
  bool greater_than(const Rational& q) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws PrecisionInsufficient when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval abs() const;
  Interval square() const { return pow(2); }
  Interval pow(unsigned long k) const;
  Interval sqrt() const;
  Interval exp() const;
  Interval log() const;
  Interval with_precision(mpfr_prec_t prec) const;

  Integer floor_lo() const;
  Integer floor_hi() const;

  std::string to_string(int digits = 20) const;

 private:
  Interval(BigFloat lo, BigFloat hi);
  BigFloat lo_;
  BigFloat hi_;
  mpfr_prec_t prec_;
};

// Unit in the last place bound helper: 2^-bits as a rational.
Rational pow2_neg(long bits);

}  // namespace diophlab
