#include "diophlab/lattice/simultaneous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "diophlab/core/error.hpp"
#include "diophlab/lattice/lll.hpp"
#include "diophlab/numeric/continued_fraction.hpp"
#include "diophlab/numeric/standard_part.hpp"

namespace diophlab::lattice {

bool meets_dirichlet_bound(const std::vector<PrecisionReal>& errors, const Integer& Q) {
  const unsigned long r = errors.size();
  for (const auto& e : errors) {
    if (e.exact()) {
      if (rpow(abs(*e.exact()), static_cast<long>(r)) * Rational(Q) > 1) return false;
      continue;
    }
    Interval lhs = e.enclosure().abs().pow(r) * Interval(Rational(Q), e.precision());
    if (!lhs.less_than(Rational(1)) && !(lhs.hi_rational() == 1)) return false;
  }
  return true;
}

namespace {

SimultaneousApprox certify(const OracleVector& theta, const Integer& q, const Integer& Q, long bits) {
  SimultaneousApprox out;
  out.q = q;
  for (const auto& t : theta) {
    auto ni = nearest_integer(t.scaled(Rational(q)), bits);
    out.p.push_back(ni.n);
    out.errors.push_back(ni.residual);
    out.max_error = std::max(out.max_error, std::fabs(ni.residual.mid_double()));
  }
  out.meets_dirichlet_bound = meets_dirichlet_bound(out.errors, Q);
  return out;
}

Integer scan(const OracleVector& theta, unsigned long Q, long bits) {
  // 64-bit fixed-point fractional parts; q*T_i mod 2^64 tracks frac(q theta_i).
  std::vector<std::uint64_t> step;
  for (const auto& t : theta) {
    Rational v = t.eval(bits).enclosure().mid_rational();
    Rational frac = v - floor(v);
    mpq_mul_2exp(frac.get_mpq_t(), frac.get_mpq_t(), 64);
    Integer z = round_half_even(frac);
    if (z >= Integer(1) << 64) z = 0;
    step.push_back(static_cast<std::uint64_t>(std::stoull(z.get_str())));
  }
  std::vector<std::uint64_t> acc(theta.size(), 0);
  std::uint64_t best = UINT64_MAX;
  unsigned long best_q = 1;
  for (unsigned long q = 1; q <= Q; ++q) {
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] += step[i];
      std::uint64_t d = std::min(acc[i], static_cast<std::uint64_t>(0) - acc[i]);
      worst = std::max(worst, d);
    }
    if (worst < best) {
      best = worst;
      best_q = q;
    }
  }
  return Integer(best_q);
}

Integer lll_search(const OracleVector& theta, const Integer& Q, long bits) {
  const std::size_t r = theta.size();
  // Coordinates (q / Q, Q^(1/r) (q theta_i - p_i)) scaled by 2^bits.
  mpfr_prec_t w = bits + 64;
  Interval qroot = Interval(Rational(Q), w).log() * Interval(Rational(1, static_cast<long>(r)), w);
  qroot = qroot.exp();
  Rational scale = Rational(1);
  mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  IntMatrix basis(r + 1, IntVector(r + 1, 0));
  basis[0][0] = round_half_even(Rational(scale / Rational(Q)));
  Rational root = qroot.mid_rational();
  for (std::size_t i = 0; i < r; ++i) {
    Rational t = theta[i].eval(w).enclosure().mid_rational();
    basis[0][i + 1] = round_half_even(Rational(scale * root * t));
    basis[i + 1][i + 1] = -round_half_even(Rational(scale * root));
  }
  auto transform = lll_reduce(basis).transform;
  Integer best_q = 0;
  double best_err = INFINITY;
  for (std::size_t a = 0; a < transform.size(); ++a) {
    for (int sa : {-1, 1}) {
      for (std::size_t b = 0; b <= transform.size(); ++b) {
        for (int sb : {-1, 0, 1}) {
          if (b == transform.size() && sb != 0) continue;
          Integer q = sa * transform[a][0];
          if (b < transform.size()) q += sb * transform[b][0];
          if (q < 1 || q > Q) continue;
          double err = 0;
          for (const auto& t : theta) {
            auto ni = nearest_integer(t.scaled(Rational(q)), bits);
            err = std::max(err, std::fabs(ni.residual.mid_double()));
          }
          if (err < best_err || (err == best_err && q < best_q)) {
            best_err = err;
            best_q = q;
          }
        }
      }
    }
  }
  if (best_q == 0) fail(ErrorCode::SearchExhausted, "LLL search found no admissible q");
  return best_q;
}

}  // namespace

SimultaneousApprox simultaneous_approx(const OracleVector& theta, const Integer& Q,
                                       const SimultaneousOptions& options) {
  if (Q < 1) fail(ErrorCode::NotPositive, "Q must be at least 1");
  if (theta.empty()) fail(ErrorCode::InvalidArgument, "simultaneous_approx needs at least one value");
  const long bits = std::max(options.precision, static_cast<long>(2 * mpz_sizeinbase(Q.get_mpz_t(), 2)) + 64);
  if (theta.size() == 1) {
    // The last convergent denominator not above Q is a best approximation.
    Integer best_q = 1;
    for (std::size_t k = 8;; k *= 2) {
      auto cf = continued_fraction(theta[0], k, bits);
      bool passed = false;
      for (const auto& [p, q] : cf.convergents) {
        if (q > Q) {
          passed = true;
          break;
        }
        best_q = q;
      }
      if (passed || cf.terminated) break;
    }
    return certify(theta, best_q, Q, bits);
  }
  if (Q <= Integer(options.scan_cap)) return certify(theta, scan(theta, Q.get_ui(), bits), Q, bits);
  return certify(theta, lll_search(theta, Q, bits), Q, bits);
}

}  // namespace diophlab::lattice
