#include "diophlab/numeric/upoly.hpp"

#include <algorithm>

#include "diophlab/core/error.hpp"

namespace diophlab {

QPoly::QPoly(RatVector ascending) : c_(std::move(ascending)) { trim(); }

QPoly QPoly::from_integers(const IntVector& ascending) {
  RatVector c;
  c.reserve(ascending.size());
  for (const auto& z : ascending) c.emplace_back(z);
  return QPoly(std::move(c));
}

QPoly QPoly::constant(const Rational& c) { return QPoly(RatVector{c}); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  RatVector v(static_cast<size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational QPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

QPoly operator+(const QPoly& a, const QPoly& b) {
  RatVector c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + b.scaled(-1); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  RatVector c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(c));
}

QPoly QPoly::scaled(const Rational& s) const {
  RatVector c = c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  RatVector r = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  RatVector q(static_cast<size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lb = b.c_.back();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<size_t>(i)] / lb;
    if (f == 0) continue;
    q[static_cast<size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.c_[static_cast<size_t>(j)];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  RatVector d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading());
}

QPoly QPoly::squarefree() const {
  if (degree() <= 0) return monic();
  QPoly g = gcd(*this, derivative());
  return divmod(*this, g).first.monic();
}

QPoly QPoly::scale_roots(const Rational& s) const {
  // roots of result are s * roots of this
  RatVector c = c_;
  int n = degree();
  for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] *= rpow(s, n - i);
  return QPoly(std::move(c));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int QPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

Interval QPoly::eval(const Interval& x) const {
  Interval acc(Rational(0), x.precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Interval(*it, x.precision());
  return acc;
}

IntVector QPoly::primitive_integer() const {
  Integer den = 1;
  for (const auto& q : c_) den = lcm(den, q.get_den());
  IntVector out;
  out.reserve(c_.size());
  for (const auto& q : c_) out.push_back(Integer(q * den));
  Integer g = 0;
  for (const auto& z : out) g = diophlab::gcd(g, z);
  if (g != 0)
    for (auto& z : out) z /= g;
  if (!out.empty() && out.back() < 0)
    for (auto& z : out) z = -z;
  return out;
}

bool QPoly::has_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = a == 1 && i > 0;
    if (!unit) out += diophlab::to_string(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    QPoly r = QPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    seq.push_back(r.scaled(-1));
  }
  seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<QPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_roots_closed(const QPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "root count of the zero polynomial");
  if (p.degree() == 0 || a > b) return 0;
  QPoly s = p.squarefree();
  auto seq = sturm_sequence(s);
  // Sturm counts roots in (a, b]; add a if it is itself a root.
  int n = sign_changes(seq, a) - sign_changes(seq, b);
  if (s.sign_at(a) == 0) ++n;
  return n;
}

Rational root_bound(const QPoly& p) {
  if (p.degree() <= 0) return 1;
  Rational m = 0;
  Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i)) / lead));
  return 1 + m;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& p) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  QPoly s = p.squarefree();
  Rational b = root_bound(s);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count_roots_closed(s, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    if (s.sign_at(mid) == 0) {
      out.emplace_back(mid, mid);
      // Shrink both halves away from the exact root so they stay disjoint.
      Rational eps = (hi - lo) / 8;
      while (count_roots_closed(s, mid - eps, mid + eps) > 1) eps /= 2;
      stack.emplace_back(lo, mid - eps);
      stack.emplace_back(mid + eps, hi);
    } else {
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace diophlab
