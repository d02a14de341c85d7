#pragma once

#include <compare>
#include <map>
#include <optional>

#include "diophlab/numeric/oracle.hpp"

namespace diophlab {

// Basis symbols of the exact linear domain: sqrt(t) for squarefree t >= 1
// (t = 1 is the unit) and log(p) for primes p. The symbols are linearly
// independent over Q.
struct Symbol {
  enum class Type { Root, LogPrime };
  Type type = Type::Root;
  Integer value = 1;
  friend bool operator<(const Symbol& x, const Symbol& y) {
    if (x.type != y.type) return x.type < y.type;
    return x.value < y.value;
  }
  friend bool operator==(const Symbol& x, const Symbol& y) { return x.type == y.type && x.value == y.value; }
};

using LinearForm = std::map<Symbol, Rational>;

std::optional<LinearForm> linear_form(const RealOracle& x);
LinearForm form_add(const LinearForm& a, const LinearForm& b);
LinearForm form_scale(const LinearForm& a, const Rational& q);
// Defined when one side is rational or both are root-only.
std::optional<LinearForm> form_product(const LinearForm& a, const LinearForm& b);
std::optional<Rational> form_rational(const LinearForm& f);
bool form_is_zero(const LinearForm& f);
std::string symbol_name(const Symbol& s);

// Value as a polynomial in one algebraic leaf (absent for plain rationals).
struct AlgebraicForm {
  std::optional<RealOracle> root;
  QPoly value;
};
std::optional<AlgebraicForm> algebraic_form(const RealOracle& x);
// Decides value == 0 exactly.
bool algebraic_form_is_zero(const AlgebraicForm& f);

// Decides sum m_i x_i == 0 exactly when the entries share an exact domain;
// nullopt when no exact route applies.
std::optional<bool> exact_zero_combination(const IntVector& m, const OracleVector& xs);
std::optional<bool> exact_zero_combination(const RatVector& c, const OracleVector& xs);
// Exact rational value of sum c_i x_i when it is provably rational.
std::optional<Rational> exact_rational_combination(const RatVector& c, const OracleVector& xs);

}  // namespace diophlab
