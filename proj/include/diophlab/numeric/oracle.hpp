#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diophlab/numeric/precision_real.hpp"
#include "diophlab/numeric/upoly.hpp"

namespace diophlab {

enum class OracleKind {
  Rational,
  Surd,
  Algebraic,
  Pi,
  Euler,
  Log,
  Digits,
  Sum,
  Product,
  Scale,
  Reciprocal,
  Power,
  Exp,
};

enum class Exactness { Rational, QuadraticSurd, Algebraic, SymbolicConstant, DigitStream, Composite };

std::string_view exactness_name(Exactness e);

struct OracleNode;

// Immutable handle to a real number that can be enclosed to any requested
// precision. Copies share the node and its enclosure cache.
class RealOracle {
 public:
  RealOracle();
  static RealOracle rational(const Rational& q);
  static RealOracle integer(long n) { return rational(Rational(n)); }
  // (a + b*sqrt(d)) / c
  static RealOracle surd(const Integer& a, const Integer& b, const Integer& c, const Integer& d);
  static RealOracle sqrt(const Rational& q);
  // The unique real root of `ascending` inside [lo, hi].
  static RealOracle algebraic(const IntVector& ascending, const Rational& lo, const Rational& hi);
  static RealOracle pi();
  static RealOracle euler();
  static RealOracle log(const Rational& q);
  // Truncated positional expansion such as "3.14159" in the given base.
  static RealOracle digits(int base, std::string_view text);
  static RealOracle parse(std::string_view literal);

  RealOracle operator-() const;
  friend RealOracle operator+(const RealOracle& a, const RealOracle& b);
  friend RealOracle operator-(const RealOracle& a, const RealOracle& b);
  friend RealOracle operator*(const RealOracle& a, const RealOracle& b);
  friend RealOracle operator/(const RealOracle& a, const RealOracle& b);
  RealOracle scaled(const Rational& q) const;
  RealOracle reciprocal() const;
  RealOracle pow(unsigned long k) const;
  RealOracle exp() const;

  // Enclosure of width at most 2^-bits; exact when the value is rational.
  PrecisionReal eval(long bits) const;

  OracleKind kind() const;
  Exactness exactness() const;
  // Canonical literal; parse(literal()) denotes the same number.
  const std::string& literal() const;
  std::optional<Rational> as_rational() const;
  bool is_rational() const { return kind() == OracleKind::Rational; }

  // Surd parts (a, b, c, d): value (a + b*sqrt(d))/c, d squarefree, d != 1.
  struct SurdParts {
    Integer a, b, c, d;
  };
  std::optional<SurdParts> surd_parts() const;
  // Defining polynomial and isolating bracket of an Algebraic leaf.
  struct AlgebraicParts {
    IntVector polynomial;
    Rational lo, hi;
    QPoly squarefree;
  };
  std::optional<AlgebraicParts> algebraic_parts() const;
  std::optional<Rational> log_argument() const;
  std::optional<Rational> scale_factor() const;
  std::optional<unsigned long> power_exponent() const;
  std::vector<RealOracle> children() const;

  bool same_as(const RealOracle& other) const { return literal() == other.literal(); }

 private:
  explicit RealOracle(std::shared_ptr<const OracleNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const OracleNode> node_;
  friend struct OracleNode;
};

using OracleVector = std::vector<RealOracle>;
using OracleMatrix = std::vector<OracleVector>;

OracleVector parse_oracle_list(const std::vector<std::string>& literals);
// Parses "[[a,b],[c,d]]" or "a,b;c,d" into a matrix of oracles.
OracleMatrix parse_oracle_matrix(std::string_view text);

}  // namespace diophlab
