#include "diophlab/numeric/continued_fraction.hpp"

#include "diophlab/core/error.hpp"

namespace diophlab {

namespace {

void fill_convergents(ContinuedFraction& cf) {
  Integer p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  cf.convergents.clear();
  for (const auto& a : cf.partial_quotients) {
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    cf.convergents.emplace_back(p, q);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
}

}  // namespace

ContinuedFraction continued_fraction(const RealOracle& x, std::size_t k, long bits, long cap_bits) {
  ContinuedFraction cf;
  if (k == 0) return cf;
  if (auto q = x.as_rational()) {
    Rational r = *q;
    while (cf.partial_quotients.size() < k) {
      Integer a = floor(r);
      cf.partial_quotients.push_back(a);
      Rational frac = r - a;
      if (frac == 0) {
        cf.terminated = true;
        break;
      }
      r = 1 / frac;
    }
    fill_convergents(cf);
    return cf;
  }
  for (long b = bits;; b *= 2) {
    PrecisionReal v = x.eval(b);
    Rational lo = v.enclosure().lo_rational(), hi = v.enclosure().hi_rational();
    std::vector<Integer> terms;
    // Both endpoints share each floor, so every point between them does too.
    while (terms.size() < k) {
      Integer a = floor(lo);
      if (a != floor(hi)) break;
      terms.push_back(a);
      Rational fl = lo - a, fh = hi - a;
      if (fl == 0 || fh == 0) break;
      Rational nlo = 1 / fh, nhi = 1 / fl;
      lo = nlo;
      hi = nhi;
    }
    if (terms.size() >= k) {
      cf.partial_quotients = std::move(terms);
      fill_convergents(cf);
      return cf;
    }
    if (b * 2 > cap_bits)
      fail(ErrorCode::PrecisionInsufficient,
           "continued fraction of " + x.literal() + " needs more than " + std::to_string(cap_bits) + " bits");
  }
}

}  // namespace diophlab
