#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diophlab/numeric/interval.hpp"

namespace diophlab {

// Univariate polynomial over Q, coefficients stored in ascending degree,
// no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(RatVector ascending);
  static QPoly from_integers(const IntVector& ascending);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const RatVector& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational leading() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  QPoly scaled(const Rational& s) const;

  // a = q*b + r with deg r < deg b.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
  static QPoly gcd(QPoly a, QPoly b);

  QPoly derivative() const;
  QPoly monic() const;
  QPoly squarefree() const;
  // Q(x) = P(x / s) * s^deg, used to scale roots by s.
  QPoly scale_roots(const Rational& s) const;

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  Interval eval(const Interval& x) const;

  // Integer multiple with content 1 and positive leading coefficient.
  IntVector primitive_integer() const;
  bool has_integer_coefficients() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  RatVector c_;
};

std::vector<QPoly> sturm_sequence(const QPoly& p);
// Distinct real roots of p in the closed interval [a, b].
int count_roots_closed(const QPoly& p, const Rational& a, const Rational& b);
// Bound B with every real root in [-B, B].
Rational root_bound(const QPoly& p);
// Disjoint closed rational intervals, one per distinct real root, ascending.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& p);

}  // namespace diophlab
