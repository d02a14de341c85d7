#include "diophlab/lattice/lll.hpp"

#include <algorithm>

#include "diophlab/core/error.hpp"

namespace diophlab::lattice {

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

class IntegralLll {
 public:
  IntegralLll(const IntMatrix& rows, const Rational& delta)
      : n_(rows.size()), b_(rows.size() + 1), h_(rows.size() + 1), d_(rows.size() + 1),
        lambda_(rows.size() + 1, IntVector(rows.size() + 1)), a_(delta.get_num()), den_(delta.get_den()) {
    for (std::size_t i = 0; i < n_; ++i) {
      b_[i + 1] = rows[i];
      h_[i + 1] = IntVector(n_, 0);
      h_[i + 1][i] = 1;
    }
  }

  void run() {
    if (n_ == 0) return;
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) fail(ErrorCode::DependentRows, "zero row in LLL input");
    std::size_t k = 2, kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      reduce(k, k - 1);
      Integer lhs = den_ * d_[k] * d_[k - 2];
      Integer rhs = a_ * d_[k - 1] * d_[k - 1] - den_ * lambda_[k][k - 1] * lambda_[k][k - 1];
      if (lhs < rhs) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
      }
    }
  }

  LllResult result() const {
    LllResult r;
    for (std::size_t i = 1; i <= n_; ++i) {
      r.basis.push_back(b_[i]);
      r.transform.push_back(h_[i]);
      r.gram_dets.push_back(d_[i]);
    }
    return r;
  }

 private:
  void gram_schmidt_row(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      Integer u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) u = (d_[i] * u - lambda_[k][i] * lambda_[j][i]) / d_[i - 1];
      if (j < k) {
        lambda_[k][j] = u;
      } else {
        d_[k] = u;
        if (u == 0) fail(ErrorCode::DependentRows, "LLL input rows are linearly dependent");
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    Integer twice = 2 * lambda_[k][l];
    if (abs(twice) <= d_[l]) return;
    Integer q = round_half_even(ratio(lambda_[k][l], d_[l]));
    for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= q * b_[l][c];
    for (std::size_t c = 0; c < n_; ++c) h_[k][c] -= q * h_[l][c];
    lambda_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    std::swap(h_[k], h_[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    Integer lam = lambda_[k][k - 1];
    Integer big_b = (d_[k - 2] * d_[k] + lam * lam) / d_[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lambda_[i][k];
      lambda_[i][k] = (d_[k] * lambda_[i][k - 1] - lam * t) / d_[k - 1];
      lambda_[i][k - 1] = (big_b * t + lam * lambda_[i][k]) / d_[k];
    }
    d_[k - 1] = big_b;
  }

  std::size_t n_;
  IntMatrix b_, h_;
  IntVector d_;
  IntMatrix lambda_;
  Integer a_, den_;
};

}  // namespace

Rational LllResult::min_gso_norm2() const {
  Rational best = 0;
  Integer prev = 1;
  for (std::size_t i = 0; i < gram_dets.size(); ++i) {
    Rational v(gram_dets[i], prev);
    v.canonicalize();
    if (i == 0 || v < best) best = v;
    prev = gram_dets[i];
  }
  return best;
}

LllResult lll_reduce(const IntMatrix& rows, const Rational& delta) {
  if (delta <= Rational(1, 4) || delta > 1) fail(ErrorCode::InvalidArgument, "LLL delta must lie in (1/4, 1]");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) fail(ErrorCode::DimensionMismatch, "ragged LLL input");
  IntegralLll lll(rows, delta);
  lll.run();
  return lll.result();
}

bool is_lll_reduced(const IntMatrix& rows, const Rational& delta) {
  std::size_t n = rows.size();
  std::vector<RatVector> star(n);
  RatVector norms(n);
  RatMatrix mu(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = RatVector(rows[i].begin(), rows[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0;
      for (std::size_t c = 0; c < rows[i].size(); ++c) num += Rational(rows[i][c]) * star[j][c];
      mu[i][j] = num / norms[j];
      for (std::size_t c = 0; c < rows[i].size(); ++c) star[i][c] -= mu[i][j] * star[j][c];
    }
    norms[i] = 0;
    for (const auto& x : star[i]) norms[i] += x * x;
    if (norms[i] == 0) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > Rational(1, 2)) return false;
  for (std::size_t k = 1; k < n; ++k)
    if (norms[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) return false;
  return true;
}

Integer gram_determinant(const IntMatrix& rows) {
  std::size_t n = rows.size();
  IntMatrix g(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = dot(rows[i], rows[j]);
  // Bareiss determinant.
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (g[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && g[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(g[k], g[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) g[i][j] = (g[i][j] * g[k][k] - g[i][k] * g[k][j]) / prev;
    prev = g[k][k];
  }
  return sign * (n ? g[n - 1][n - 1] : Integer(1));
}

std::size_t rank(const IntMatrix& rows) {
  if (rows.empty()) return 0;
  IntMatrix m = rows;
  std::size_t nr = m.size(), nc = m.front().size(), r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && m[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j) m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace diophlab::lattice
