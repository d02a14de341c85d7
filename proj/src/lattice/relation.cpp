#include "diophlab/lattice/relation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "diophlab/core/error.hpp"
#include "diophlab/lattice/lll.hpp"
#include "diophlab/numeric/exact.hpp"

namespace diophlab::lattice {

std::string_view status_name(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::ExactVerified: return "ExactVerified";
    case CertificateStatus::Empirical: return "Empirical";
    case CertificateStatus::NoneUpTo: return "NoneUpTo";
  }
  return "NoneUpTo";
}

namespace {

std::size_t columns(const OracleMatrix& rows) {
  if (rows.empty() || rows.front().empty()) fail(ErrorCode::InvalidArgument, "empty relation input");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) fail(ErrorCode::DimensionMismatch, "ragged relation input");
  return rows.front().size();
}

std::vector<PrecisionReal> residuals_at(const OracleMatrix& rows, const IntVector& m, long bits) {
  std::vector<PrecisionReal> out;
  for (const auto& row : rows) {
    PrecisionReal acc(Rational(0), bits);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (m[j] == 0) continue;
      acc = acc + PrecisionReal(Rational(m[j]), bits) * row[j].eval(bits);
    }
    out.push_back(acc);
  }
  return out;
}

// Every m with height <= H gives a lattice vector (m, t) of squared norm at
// least lambda2, so some |t_i| >= sqrt((lambda2 - n H^2) / r); each t_i is
// within n*H of 2^p * sum m x_i.
double residual_floor(const Rational& lambda2, std::size_t n, std::size_t r, const Integer& H, long p) {
  Rational slack = Rational(H * H) * static_cast<long>(n);
  if (lambda2 <= slack) return 0;
  mpfr_prec_t w = 64;
  Interval t = (Interval(Rational(lambda2 - slack), w) / Interval(Rational(static_cast<long>(r)), w)).sqrt();
  t = t - Interval(Rational(H * static_cast<long>(n)), w);
  double lo = mpfr_get_d(t.lo().get(), MPFR_RNDD);
  if (!(lo > 0)) return 0;
  return std::ldexp(lo, static_cast<int>(-p)) * (1 - 1e-12);
}

long bit_length(const Integer& z) { return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

// Integer kernel basis of the condition matrix (conditions x n) via LLL on
// [I_n | W * C^T], raising W until the kernel rank is reached.
IntMatrix integer_kernel(const IntMatrix& conditions, std::size_t n) {
  std::size_t rk = conditions.empty() ? 0 : rank(conditions);
  std::size_t kdim = n - rk;
  if (kdim == 0) return {};
  Integer max_entry = 1;
  for (const auto& c : conditions)
    for (const auto& x : c) max_entry = std::max<Integer>(max_entry, abs(x));
  long wbits = static_cast<long>(n) + 8 + bit_length(max_entry);
  for (;; wbits *= 2) {
    Integer w = Integer(1) << static_cast<mp_bitcnt_t>(wbits);
    IntMatrix basis(n);
    for (std::size_t j = 0; j < n; ++j) {
      basis[j].assign(n, 0);
      basis[j][j] = 1;
      for (const auto& c : conditions) basis[j].push_back(w * c[j]);
    }
    auto reduced = lll_reduce(basis).basis;
    IntMatrix kernel;
    for (const auto& v : reduced) {
      bool zero_tail = std::all_of(v.begin() + static_cast<long>(n), v.end(), [](const Integer& x) { return x == 0; });
      if (zero_tail) kernel.emplace_back(v.begin(), v.begin() + static_cast<long>(n));
    }
    if (kernel.size() == kdim) return kernel;
    if (wbits > (1L << 16)) fail(ErrorCode::CapExceeded, "kernel weight escalation did not converge");
  }
}

IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  }
  return v;
}

}  // namespace

std::optional<RelationLattice> exact_relation_lattice(const OracleMatrix& rows, const Integer& height) {
  std::size_t n = columns(rows);
  IntMatrix conditions;
  for (const auto& row : rows) {
    std::vector<LinearForm> forms;
    std::set<Symbol> symbols;
    for (const auto& x : row) {
      auto f = linear_form(x);
      if (!f) return std::nullopt;
      for (const auto& [s, c] : *f) symbols.insert(s);
      forms.push_back(std::move(*f));
    }
    for (const auto& s : symbols) {
      RatVector cond(n, Rational(0));
      Integer den = 1;
      for (std::size_t j = 0; j < n; ++j) {
        auto it = forms[j].find(s);
        if (it != forms[j].end()) cond[j] = it->second;
        den = lcm(den, cond[j].get_den());
      }
      IntVector ic;
      for (const auto& q : cond) ic.push_back(Integer(q * den));
      conditions.push_back(std::move(ic));
    }
  }
  RelationLattice out;
  out.exact = true;
  out.height_bound = height;
  for (auto& m : integer_kernel(conditions, n)) {
    RelationCertificate c;
    c.status = CertificateStatus::ExactVerified;
    c.relation = sign_normalized(std::move(m));
    c.height_bound = height;
    for (std::size_t i = 0; i < rows.size(); ++i) c.residuals.emplace_back(Rational(0), 64);
    out.basis.push_back(std::move(c));
  }
  return out;
}

RelationLattice relation_lattice(const OracleMatrix& rows, const RelationOptions& options) {
  std::size_t n = columns(rows);
  if (auto exact = exact_relation_lattice(rows, options.height)) return *exact;

  const long hbits = bit_length(options.height);
  const long needed = static_cast<long>(n) * (hbits + 2) + 2 * static_cast<long>(n) + 48;
  long p = std::max(options.precision - 16, needed);
  RelationLattice best;
  best.height_bound = options.height;
  for (;;) {
    IntMatrix basis(n);
    for (std::size_t j = 0; j < n; ++j) {
      basis[j].assign(n, 0);
      basis[j][j] = 1;
    }
    try {
      for (const auto& row : rows) {
        for (std::size_t j = 0; j < n; ++j) {
          PrecisionReal v = row[j].eval(p + 32);
          Rational scaled = v.exact() ? *v.exact() : v.enclosure().mid_rational();
          mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(p));
          basis[j].push_back(round_half_even(scaled));
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnevaluatableDigitStream)
        fail(ErrorCode::PrecisionInsufficient, std::string("relation search: ") + e.what());
      throw;
    }
    auto lll = lll_reduce(basis, options.delta);
    const auto& reduced = lll.basis;

    RelationLattice found;
    found.height_bound = options.height;
    found.precision_bits = p;
    found.residual_floor = residual_floor(lll.min_gso_norm2(), n, rows.size(), options.height, p);
    bool spurious = false;
    for (const auto& v : reduced) {
      IntVector m(v.begin(), v.begin() + static_cast<long>(n));
      if (is_zero(m)) continue;
      Integer l1 = 0;
      for (const auto& x : m) l1 += abs(x);
      bool small_tail = true;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (abs(v[n + i]) > l1 + static_cast<long>(n)) small_tail = false;
      if (!small_tail || height(m) > options.height) continue;
      RelationCertificate c;
      c.relation = sign_normalized(m);
      c.height_bound = options.height;
      c.precision_bits = 2 * p;
      bool all_exact = true, ok = true;
      for (const auto& row : rows) {
        auto z = exact_zero_combination(c.relation, row);
        if (!z) {
          all_exact = false;
        } else if (!*z) {
          ok = false;
        }
      }
      if (ok) {
        try {
          c.residuals = residuals_at(rows, c.relation, 2 * p);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::UnevaluatableDigitStream)
            fail(ErrorCode::PrecisionInsufficient, std::string("relation verification: ") + e.what());
          throw;
        }
        for (const auto& r : c.residuals)
          if (!r.contains_zero()) ok = false;
      }
      if (!ok) {
        spurious = true;
        continue;
      }
      c.status = all_exact ? CertificateStatus::ExactVerified : CertificateStatus::Empirical;
      found.basis.push_back(std::move(c));
    }
    best = std::move(found);
    if (!spurious || 2 * p > options.precision_cap) break;
    p *= 2;
  }
  return best;
}

RelationCertificate integer_relation(const OracleVector& xs, const RelationOptions& options) {
  if (xs.size() < 2) fail(ErrorCode::InvalidArgument, "integer_relation needs at least two values");
  RelationLattice lat = relation_lattice({xs}, options);
  if (!lat.basis.empty()) {
    // Prefer the smallest height among the found basis vectors.
    auto it = std::min_element(lat.basis.begin(), lat.basis.end(), [](const auto& a, const auto& b) {
      return height(a.relation) < height(b.relation);
    });
    return *it;
  }
  RelationCertificate none;
  none.status = CertificateStatus::NoneUpTo;
  none.height_bound = options.height;
  none.residual_floor = lat.residual_floor;
  none.proven_none = lat.exact;
  none.precision_bits = lat.precision_bits;
  return none;
}

}  // namespace diophlab::lattice
