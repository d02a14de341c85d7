#include "diophlab/numeric/integer.hpp"

#include <cctype>

#include "diophlab/core/error.hpp"

namespace diophlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) fail(ErrorCode::Parse, "not an integer: '" + std::string(text) + "'");
  Integer z(std::string(text), 10);
  return negative ? Integer(-z) : z;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) fail(ErrorCode::Parse, "empty number");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  bool negative = !whole.empty() && whole.front() == '-';
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
      (whole.empty() && frac.empty()))
    fail(ErrorCode::Parse, "not a decimal: '" + std::string(text) + "'");
  Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  Rational q(num, ipow(10, frac.size()));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_half_even(const Rational& q) {
  Integer f = floor(q);
  Rational diff = q - f;
  if (diff < Rational(1, 2)) return f;
  if (diff > Rational(1, 2)) return f + 1;
  return mpz_even_p(f.get_mpz_t()) ? f : Integer(f + 1);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::InvalidArgument, "zero to a negative power");
    Rational inv = 1 / base;
    return rpow(inv, -exp);
  }
  Rational r(ipow(base.get_num(), static_cast<unsigned long>(exp)),
             ipow(base.get_den(), static_cast<unsigned long>(exp)));
  r.canonicalize();
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

SquarefreeSplit squarefree_split(const Integer& n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "squarefree split of zero");
  auto factors = factor_small(n < 0 ? Integer(-n) : n);
  if (!factors) fail(ErrorCode::InvalidArgument, "radicand too large to factor: " + to_string(n));
  Integer s = 1, t = n < 0 ? -1 : 1;
  for (const auto& [p, e] : *factors) {
    s *= ipow(p, static_cast<unsigned long>(e / 2));
    if (e % 2) t *= p;
  }
  return {s, t};
}

std::optional<std::map<Integer, long>> factor_small(Integer n) {
  if (n < 0) n = -n;
  std::map<Integer, long> out;
  if (n == 0) return std::nullopt;
  constexpr unsigned long kLimit = 1000000;
  for (unsigned long p = 2; p <= kLimit; p += (p == 2 ? 1 : 2)) {
    Integer pz(p);
    if (pz * pz > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[pz];
      n /= p;
    }
  }
  if (n > 1) {
    if (n > Integer(kLimit) * Integer(kLimit) && mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
      return std::nullopt;
    ++out[n];
  }
  return out;
}

Integer height(const IntVector& v) {
  Integer h = 0;
  for (const auto& x : v) {
    Integer a = x < 0 ? Integer(-x) : x;
    if (a > h) h = a;
  }
  return h;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVector primitive_normalized(IntVector v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  bool flip = false;
  for (const auto& x : v) {
    if (x != 0) {
      flip = x < 0;
      break;
    }
  }
  for (auto& x : v) {
    x /= g;
    if (flip) x = -x;
  }
  return v;
}

}  // namespace diophlab
