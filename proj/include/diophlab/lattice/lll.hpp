#pragma once

#include "diophlab/numeric/integer.hpp"

namespace diophlab::lattice {

struct LllResult {
  IntMatrix basis;
  IntMatrix transform;  // basis = transform * input
  // d_i = prod_{j<=i} |b*_j|^2, so |b*_i|^2 = d_i / d_{i-1}.
  IntVector gram_dets;
  // min_i |b*_i|^2, a lower bound on the squared norm of every nonzero vector.
  Rational min_gso_norm2() const;
};

// Integral LLL on linearly independent integer rows; delta in (1/4, 1].
// Throws DependentRows when the rows are linearly dependent.
LllResult lll_reduce(const IntMatrix& rows, const Rational& delta = Rational(99, 100));

// Exact check of size reduction and the Lovasz condition.
bool is_lll_reduced(const IntMatrix& rows, const Rational& delta = Rational(99, 100));

Integer dot(const IntVector& a, const IntVector& b);
// Gram determinant of the rows (square of the lattice covolume).
Integer gram_determinant(const IntMatrix& rows);
// Rank over Q by fraction-free elimination.
std::size_t rank(const IntMatrix& rows);

}  // namespace diophlab::lattice
