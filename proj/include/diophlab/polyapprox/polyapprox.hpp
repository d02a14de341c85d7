#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/lattice/relation.hpp"
#include "diophlab/numeric/upoly.hpp"

namespace diophlab::polyapprox {

using Monomial = std::vector<unsigned>;  // exponent tuple

unsigned total_degree(const Monomial& m);

// Graded dictionary order: total degree first, then exponents compared from
// the last variable, so X2 > X1 and X1^2 > X1 X2^0.
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Monomials of total degree <= d in increasing graded order; the constant
// monomial is included when `with_constant`.
std::vector<Monomial> monomials(std::size_t vars, unsigned d, bool with_constant = true);
// N(d): monomials of total degree in (0, d].
std::size_t monomial_count(std::size_t vars, unsigned d);

class IntPolynomial {
 public:
  explicit IntPolynomial(std::size_t vars = 1) : vars_(vars) {}
  static IntPolynomial univariate(const IntVector& ascending);
  static IntPolynomial from_terms(std::size_t vars, const std::vector<std::pair<Monomial, Integer>>& terms);
  // {"2": 1, "0": -2} or {"1,1": 1, "0,0,1": -1}.
  static IntPolynomial parse_json(const std::string& text);

  std::size_t variables() const { return vars_; }
  unsigned degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Integer, GradedOrder>& terms() const { return terms_; }
  Integer coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Integer& c);
  // Greatest monomial in the graded order; requires nonzero.
  const Monomial& leading_monomial() const;
  const Integer& leading_coefficient() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  // Content 1 and positive leading coefficient.
  IntPolynomial normalized() const;
  // Univariate view; requires one variable.
  QPoly to_qpoly() const;
  IntVector univariate_coefficients() const;
  std::string to_string() const;
  // Exponent tuple -> coefficient, tuples joined by commas.
  std::map<std::string, std::string> to_map() const;

 private:
  std::size_t vars_;
  std::map<Monomial, Integer, GradedOrder> terms_;
};

// Monomial values prod theta_j^e_j as oracles.
RealOracle monomial_oracle(const OracleVector& theta, const Monomial& m);

// F(theta), exactly zero when an exact route proves it.
PrecisionReal poly_error(const OracleVector& theta, const IntPolynomial& f, long bits = 256);

struct PolyCertificate {
  lattice::RelationCertificate relation;
  std::optional<IntPolynomial> polynomial;
  unsigned degree_searched = 0;  // highest degree examined
  bool found() const { return polynomial.has_value(); }
};

PolyCertificate minimal_polynomial(const RealOracle& theta, unsigned dmax, const Integer& hmax,
                                   const Config& config = {});

// `dagger`: only monomials with zero constant term.
PolyCertificate algebraic_dependence(const OracleVector& theta, unsigned dmax, const Integer& hmax,
                                     const Config& config = {}, bool dagger = false);

struct ContainmentItem {
  IntPolynomial f;
  bool divisible = false;
  QPoly quotient;
  QPoly remainder;
};

struct ContainmentReport {
  std::vector<ContainmentItem> items;
  std::optional<std::size_t> counterexample;  // first non-divisible index
  bool all_divisible() const { return !counterexample.has_value(); }
};

ContainmentReport ideal_containment(const std::vector<IntPolynomial>& found, const IntPolynomial& m);

// Every relation among (1, theta, ..., theta^d) found per degree d <= dmax:
// the full basis of each relation lattice, as polynomials.
std::vector<IntPolynomial> relations_up_to(const RealOracle& theta, unsigned dmax, const Integer& hmax,
                                           const Config& config = {});

// Members of *Z[X]_d(theta) as finite prefixes.
struct PolySequence {
  std::vector<IntPolynomial> polys;
  unsigned degree_bound = 0;

  static PolySequence of(std::vector<IntPolynomial> polys, unsigned degree_bound);
  PolySequence operator+(const PolySequence& o) const;
  PolySequence operator*(const PolySequence& o) const;
  std::vector<PrecisionReal> profile(const OracleVector& theta, long bits = 256) const;
};

}  // namespace diophlab::polyapprox
