#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diophlab {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

// Accepts "-3", "3/7", "1.41", "-0.125"; the result is canonicalized.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// num / den in lowest terms; gmpxx leaves two-argument construction unreduced.
Rational ratio(const Integer& num, const Integer& den);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Nearest integer with ties to even.
Integer round_half_even(const Rational& q);
Rational abs(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, long exp);
Integer factorial(unsigned long n);

// n = s^2 * t with t squarefree (sign kept on t). Requires n != 0.
struct SquarefreeSplit {
  Integer square_root_part;
  Integer squarefree_part;
};
SquarefreeSplit squarefree_split(const Integer& n);

// Prime factorization by trial division; nullopt when a cofactor above the
// trial limit remains unproven.
std::optional<std::map<Integer, long>> factor_small(Integer n);

// Largest |entry| of an integer vector.
Integer height(const IntVector& v);
bool is_zero(const IntVector& v);
// Divides out the gcd and makes the first nonzero entry positive.
IntVector primitive_normalized(IntVector v);

}  // namespace diophlab
