#include "diophlab/numeric/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <utility>

#include "diophlab/core/error.hpp"

namespace diophlab {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) fail(ErrorCode::PrecisionInsufficient, "non-finite interval endpoint");
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), value_);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

Rational pow2_neg(long bits) {
  Rational q(1);
  if (bits >= 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  } else {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  }
  return q;
}

Interval::Interval() : lo_(64), hi_(64), prec_(64) {}

Interval::Interval(BigFloat lo, BigFloat hi)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(std::max(lo_.precision(), hi_.precision())) {}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : lo_(prec), hi_(prec), prec_(prec) {
  mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec)
    : lo_(prec), hi_(prec), prec_(prec) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "interval with lo > hi");
  mpfr_set_q(lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::pi(mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::euler(mpfr_prec_t prec) {
  return Interval(Rational(1), prec).exp();
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  BigFloat lo = mpfr_lessequal_p(a.lo_.get(), b.lo_.get()) ? a.lo_ : b.lo_;
  BigFloat hi = mpfr_greaterequal_p(a.hi_.get(), b.hi_.get()) ? a.hi_ : b.hi_;
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::intersect(const Interval& a, const Interval& b) {
  BigFloat lo = mpfr_greaterequal_p(a.lo_.get(), b.lo_.get()) ? a.lo_ : b.lo_;
  BigFloat hi = mpfr_lessequal_p(a.hi_.get(), b.hi_.get()) ? a.hi_ : b.hi_;
  if (mpfr_greater_p(lo.get(), hi.get()))
    fail(ErrorCode::InvalidArgument, "disjoint enclosures of one value");
  return Interval(std::move(lo), std::move(hi));
}

Rational Interval::mid_rational() const { return (lo_rational() + hi_rational()) / 2; }

Rational Interval::width() const { return hi_rational() - lo_rational(); }

double Interval::mid_double() const {
  BigFloat m(prec_ + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::width_double() const {
  BigFloat w(prec_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::width_within(long bits) const {
  BigFloat w(prec_ + 2);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_zero_p(w.get())) return true;
  BigFloat bound(64);
  mpfr_set_ui_2exp(bound.get(), 1, -bits, MPFR_RNDN);
  return mpfr_lessequal_p(w.get(), bound.get());
}

bool Interval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) && mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
}

bool Interval::positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_.get()) < 0; }

bool Interval::less_than(const Rational& q) const { return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0; }
bool Interval::greater_than(const Rational& q) const { return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0; }

Interval Interval::operator-() const {
  BigFloat lo(prec_), hi(prec_);
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator+(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec_, b.prec_);
  BigFloat lo(p), hi(p);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec_, b.prec_);
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

std::pair<BigFloat, BigFloat> corner_extremes(mpfr_srcptr a0, mpfr_srcptr a1, mpfr_srcptr b0,
                                              mpfr_srcptr b1, mpfr_prec_t p, BinaryOp op) {
  mpfr_srcptr as[2] = {a0, a1};
  mpfr_srcptr bs[2] = {b0, b1};
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      op(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) lo = t;
      op(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) hi = t;
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec_, b.prec_);
  auto [lo, hi] = corner_extremes(a.lo_.get(), a.hi_.get(), b.lo_.get(), b.hi_.get(), p, mpfr_mul);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorCode::PrecisionInsufficient, "division by an interval containing zero");
  mpfr_prec_t p = std::max(a.prec_, b.prec_);
  auto [lo, hi] = corner_extremes(a.lo_.get(), a.hi_.get(), b.lo_.get(), b.hi_.get(), p, mpfr_div);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  BigFloat lo(prec_), hi(prec_);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_less_p(hi.get(), hi_.get())) hi = hi_;
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::pow(unsigned long k) const {
  if (k == 0) return Interval(Rational(1), prec_);
  const Interval base = (k % 2 == 0) ? abs() : *this;
  BigFloat lo(prec_), hi(prec_);
  mpfr_pow_ui(lo.get(), base.lo_.get(), k, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), base.hi_.get(), k, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_.get()) < 0) fail(ErrorCode::InvalidArgument, "square root of a negative interval");
  BigFloat lo(prec_), hi(prec_);
  if (mpfr_sgn(lo_.get()) > 0) mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::exp() const {
  BigFloat lo(prec_), hi(prec_);
  mpfr_exp(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) fail(ErrorCode::PrecisionInsufficient, "logarithm of an interval touching zero");
  BigFloat lo(prec_), hi(prec_);
  mpfr_log(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::with_precision(mpfr_prec_t prec) const {
  BigFloat lo(prec), hi(prec);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Integer Interval::floor_lo() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), lo_.get(), MPFR_RNDD);
  return z;
}

Integer Interval::floor_hi() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), hi_.get(), MPFR_RNDD);
  return z;
}

std::string Interval::to_string(int digits) const {
  auto render = [digits](mpfr_srcptr x, mpfr_rnd_t rnd) {
    char* raw = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "R*g";
    mpfr_asprintf(&raw, fmt.c_str(), rnd, x);
    std::string s(raw);
    mpfr_free_str(raw);
    return s;
  };
  return "[" + render(lo_.get(), MPFR_RNDD) + ", " + render(hi_.get(), MPFR_RNDU) + "]";
}

}  // namespace diophlab
