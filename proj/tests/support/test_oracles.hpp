#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's reduction or relation code.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testref {

using Z = mpz_class;
using Q = mpq_class;
using ZMat = std::vector<std::vector<Z>>;
using QMat = std::vector<std::vector<Q>>;

// Row echelon form over Q; returns the rank.
inline std::size_t rank_q(QMat m) {
  std::size_t r = 0;
  if (m.empty()) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Basis of the rational kernel {x : m x = 0}, by reduced row echelon form.
inline QMat kernel_q(QMat m, std::size_t cols) {
  std::vector<long> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Q inv = 1 / m[r][c];
    for (std::size_t j = 0; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<long>(c));
    ++r;
  }
  QMat out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<long>(free)) != pivot_col.end()) continue;
    std::vector<Q> v(cols, Q(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -m[i][free];
    out.push_back(v);
  }
  return out;
}

// Hermite normal form of the row lattice (rows assumed independent).
inline ZMat hnf(ZMat a) {
  std::size_t rows = a.size();
  if (rows == 0) return a;
  std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid down the column to leave one nonzero entry at row r.
    for (;;) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (p == rows || abs(a[i][c]) < abs(a[p][c]))) p = i;
      if (p == rows) break;
      std::swap(a[p], a[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

// Rank by fraction-free (Bareiss) elimination over Z.
inline std::size_t rank_bareiss(ZMat m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  Z prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Z t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

// Order of the subgroup of (Q/Z)^r generated by the columns, by orbit search.
inline std::size_t rational_orbit_order(const QMat& theta, std::size_t cap = 100000) {
  const std::size_t r = theta.size(), s = theta[0].size();
  auto reduce = [](std::vector<Q> v) {
    for (auto& x : v) {
      Z f;
      mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      x -= f;
    }
    return v;
  };
  std::vector<std::vector<Q>> seen{std::vector<Q>(r, Q(0))};
  for (std::size_t head = 0; head < seen.size() && seen.size() <= cap; ++head) {
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<Q> next = seen[head];
      for (std::size_t i = 0; i < r; ++i) next[i] += theta[i][j];
      next = reduce(next);
      if (std::find(seen.begin(), seen.end(), next) == seen.end()) seen.push_back(next);
    }
  }
  return seen.size();
}

// Real root of an integer polynomial (ascending coefficients) refined by
// bisection in mpf from a sign change found on a grid; false when the grid
// finds no sign change.
inline bool mpf_real_root(const std::vector<Z>& asc, mpf_class& root, unsigned bits = 400) {
  auto eval_ld = [&](long double x) {
    long double v = 0;
    for (std::size_t k = asc.size(); k-- > 0;) v = v * x + asc[k].get_d();
    return v;
  };
  auto eval_f = [&](const mpf_class& x) {
    mpf_class v(0, bits);
    for (std::size_t k = asc.size(); k-- > 0;) v = v * x + mpf_class(asc[k], bits);
    return v;
  };
  const long double step = 1.0L / 512;
  for (long double x = -42; x < 42; x += step) {
    long double a = eval_ld(x), b = eval_ld(x + step);
    if (a == 0) {
      root = mpf_class(static_cast<double>(x), bits);
      return true;
    }
    if ((a < 0) == (b < 0)) continue;
    mpf_class lo(static_cast<double>(x), bits), hi(static_cast<double>(x + step), bits);
    int slo = sgn(eval_f(lo));
    for (unsigned it = 0; it < bits; ++it) {
      mpf_class mid = (lo + hi) / 2;
      int sm = sgn(eval_f(mid));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == slo) lo = mid;
      else hi = mid;
    }
    root = (lo + hi) / 2;
    return true;
  }
  return false;
}

// Coefficient-box oracle: the lowest-degree primitive integer polynomial
// with height <= h and positive leading coefficient vanishing at alpha.
// Candidates are screened in long double and confirmed at mpf precision.
inline std::vector<Z> brute_minpoly(const mpf_class& alpha, unsigned dmax, long h) {
  const long double a = alpha.get_d();
  for (unsigned d = 1; d <= dmax; ++d) {
    std::vector<long double> pw(d + 1, 1.0L);
    for (unsigned k = 1; k <= d; ++k) pw[k] = pw[k - 1] * a;
    long double scale = 0;
    for (unsigned k = 0; k <= d; ++k) scale += std::fabs(pw[k]) * h;
    std::vector<long> c(d + 1, -h);
    c[d] = 1;
    for (;;) {
      long double sum = 0;
      for (unsigned k = 1; k <= d; ++k) sum += c[k] * pw[k];
      long double c0 = std::nearbyint(-sum);
      if (std::fabs(c0) <= h && std::fabs(sum + c0) < 1e-12L * scale + 1e-9L) {
        std::vector<Z> cand(d + 1);
        cand[0] = static_cast<long>(c0);
        for (unsigned k = 1; k <= d; ++k) cand[k] = c[k];
        Z g = 0;
        for (auto& x : cand) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        mpf_class v(0, alpha.get_prec());
        for (std::size_t k = cand.size(); k-- > 0;) v = v * alpha + mpf_class(cand[k], alpha.get_prec());
        if (g == 1 && abs(v) < mpf_class(1e-60)) return cand;
      }
      std::size_t k = 1;
      while (k <= d) {
        if (c[k] < h) {
          ++c[k];
          break;
        }
        c[k] = k == d ? 1 : -h;
        ++k;
      }
      if (k > d) break;
    }
  }
  return {};
}

// Digit-by-digit decimal square root: floor(sqrt(n) * 10^digits).
inline Z decimal_sqrt(const Z& n, unsigned digits) {
  std::string s = n.get_str();
  if (s.size() % 2) s = "0" + s;
  for (unsigned i = 0; i < digits; ++i) s += "00";
  Z rem = 0, root = 0;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    rem = rem * 100 + std::stoi(s.substr(i, 2));
    int d = 9;
    while ((root * 20 + d) * d > rem) --d;
    rem -= (root * 20 + d) * d;
    root = root * 10 + d;
  }
  return root;
}

inline double frac_dist(long double x) {
  long double f = x - std::floor(x);
  return static_cast<double>(std::min(f, 1.0L - f));
}

}  // namespace testref
