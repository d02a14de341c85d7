#include "diophlab/numeric/exact.hpp"

#include "diophlab/core/error.hpp"

namespace diophlab {

namespace {

Symbol unit() { return Symbol{Symbol::Type::Root, 1}; }

bool root_only(const LinearForm& f) {
  for (const auto& [s, c] : f)
    if (s.type != Symbol::Type::Root) return false;
  return true;
}

void clean(LinearForm& f) {
  for (auto it = f.begin(); it != f.end();) {
    if (it->second == 0) {
      it = f.erase(it);
    } else {
      ++it;
    }
  }
}

std::optional<LinearForm> log_form(const Rational& q) {
  auto num = factor_small(q.get_num());
  auto den = factor_small(q.get_den());
  if (!num || !den) return std::nullopt;
  LinearForm f;
  for (const auto& [p, e] : *num) f[Symbol{Symbol::Type::LogPrime, p}] += e;
  for (const auto& [p, e] : *den) f[Symbol{Symbol::Type::LogPrime, p}] -= e;
  clean(f);
  return f;
}

std::optional<LinearForm> form_inverse(const LinearForm& f) {
  if (auto q = form_rational(f)) {
    if (*q == 0) return std::nullopt;
    return LinearForm{{unit(), 1 / *q}};
  }
  if (!root_only(f) || f.size() > 2) return std::nullopt;
  Rational a = 0, b = 0;
  Integer t = 1;
  for (const auto& [s, c] : f) {
    if (s.value == 1) {
      a = c;
    } else {
      b = c;
      t = s.value;
    }
  }
  // 1/(a + b sqrt t) = (a - b sqrt t)/(a^2 - b^2 t)
  Rational den = a * a - b * b * Rational(t);
  LinearForm out;
  if (a != 0) out[unit()] = a / den;
  out[Symbol{Symbol::Type::Root, t}] = -b / den;
  return out;
}

}  // namespace

std::string symbol_name(const Symbol& s) {
  if (s.type == Symbol::Type::LogPrime) return "log(" + to_string(s.value) + ")";
  if (s.value == 1) return "1";
  return "sqrt(" + to_string(s.value) + ")";
}

LinearForm form_add(const LinearForm& a, const LinearForm& b) {
  LinearForm out = a;
  for (const auto& [s, c] : b) out[s] += c;
  clean(out);
  return out;
}

LinearForm form_scale(const LinearForm& a, const Rational& q) {
  LinearForm out;
  if (q == 0) return out;
  for (const auto& [s, c] : a) out[s] = c * q;
  return out;
}

std::optional<Rational> form_rational(const LinearForm& f) {
  if (f.empty()) return Rational(0);
  if (f.size() == 1 && f.begin()->first == unit()) return f.begin()->second;
  return std::nullopt;
}

bool form_is_zero(const LinearForm& f) {
  for (const auto& [s, c] : f)
    if (c != 0) return false;
  return true;
}

std::optional<LinearForm> form_product(const LinearForm& a, const LinearForm& b) {
  if (auto q = form_rational(a)) return form_scale(b, *q);
  if (auto q = form_rational(b)) return form_scale(a, *q);
  if (!root_only(a) || !root_only(b)) return std::nullopt;
  LinearForm out;
  for (const auto& [s1, c1] : a) {
    for (const auto& [s2, c2] : b) {
      // sqrt(t1) sqrt(t2) = g sqrt(t1 t2 / g^2), g = gcd(t1, t2)
      Integer g = gcd(s1.value, s2.value);
      Integer t = (s1.value / g) * (s2.value / g);
      out[Symbol{Symbol::Type::Root, t}] += c1 * c2 * Rational(g);
    }
  }
  clean(out);
  return out;
}

std::optional<LinearForm> linear_form(const RealOracle& x) {
  switch (x.kind()) {
    case OracleKind::Rational: {
      LinearForm f;
      if (*x.as_rational() != 0) f[unit()] = *x.as_rational();
      return f;
    }
    case OracleKind::Surd: {
      auto s = *x.surd_parts();
      LinearForm f;
      if (s.a != 0) f[unit()] = ratio(s.a, s.c);
      f[Symbol{Symbol::Type::Root, s.d}] = ratio(s.b, s.c);
      for (auto& [k, v] : f) v.canonicalize();
      return f;
    }
    case OracleKind::Log:
      return log_form(*x.log_argument());
    case OracleKind::Sum: {
      auto kids = x.children();
      auto a = linear_form(kids[0]);
      if (!a) return std::nullopt;
      auto b = linear_form(kids[1]);
      if (!b) return std::nullopt;
      return form_add(*a, *b);
    }
    case OracleKind::Scale: {
      auto a = linear_form(x.children()[0]);
      if (!a) return std::nullopt;
      return form_scale(*a, *x.scale_factor());
    }
    case OracleKind::Product: {
      auto kids = x.children();
      auto a = linear_form(kids[0]);
      if (!a) return std::nullopt;
      auto b = linear_form(kids[1]);
      if (!b) return std::nullopt;
      return form_product(*a, *b);
    }
    case OracleKind::Power: {
      auto a = linear_form(x.children()[0]);
      if (!a) return std::nullopt;
      LinearForm acc{{unit(), 1}};
      for (unsigned long i = 0; i < *x.power_exponent(); ++i) {
        auto next = form_product(acc, *a);
        if (!next) return std::nullopt;
        acc = std::move(*next);
      }
      return acc;
    }
    case OracleKind::Reciprocal: {
      auto a = linear_form(x.children()[0]);
      if (!a) return std::nullopt;
      return form_inverse(*a);
    }
    default:
      return std::nullopt;
  }
}

namespace {

std::optional<AlgebraicForm> merge_roots(const AlgebraicForm& a, const AlgebraicForm& b,
                                         std::optional<RealOracle>& root) {
  root = a.root ? a.root : b.root;
  if (a.root && b.root && !a.root->same_as(*b.root)) return std::nullopt;
  return AlgebraicForm{root, QPoly()};
}

QPoly reduce(const QPoly& p, const std::optional<RealOracle>& root) {
  if (!root) return p;
  return QPoly::divmod(p, QPoly::from_integers(root->algebraic_parts()->polynomial)).second;
}

}  // namespace

std::optional<AlgebraicForm> algebraic_form(const RealOracle& x) {
  switch (x.kind()) {
    case OracleKind::Rational:
      return AlgebraicForm{std::nullopt, QPoly::constant(*x.as_rational())};
    case OracleKind::Algebraic:
      return AlgebraicForm{x, QPoly::monomial(1, 1)};
    case OracleKind::Sum:
    case OracleKind::Product: {
      auto kids = x.children();
      auto a = algebraic_form(kids[0]);
      if (!a) return std::nullopt;
      auto b = algebraic_form(kids[1]);
      if (!b) return std::nullopt;
      std::optional<RealOracle> root;
      if (!merge_roots(*a, *b, root)) return std::nullopt;
      QPoly v = x.kind() == OracleKind::Sum ? a->value + b->value : a->value * b->value;
      return AlgebraicForm{root, reduce(v, root)};
    }
    case OracleKind::Scale: {
      auto a = algebraic_form(x.children()[0]);
      if (!a) return std::nullopt;
      return AlgebraicForm{a->root, a->value.scaled(*x.scale_factor())};
    }
    case OracleKind::Power: {
      auto a = algebraic_form(x.children()[0]);
      if (!a) return std::nullopt;
      QPoly acc = QPoly::constant(1);
      for (unsigned long i = 0; i < *x.power_exponent(); ++i) acc = reduce(acc * a->value, a->root);
      return AlgebraicForm{a->root, acc};
    }
    default:
      return std::nullopt;
  }
}

bool algebraic_form_is_zero(const AlgebraicForm& f) {
  if (f.value.is_zero()) return true;
  if (!f.root) return false;
  auto parts = *f.root->algebraic_parts();
  QPoly g = QPoly::gcd(f.value, parts.squarefree);
  if (g.degree() < 1) return false;
  return count_roots_closed(g, parts.lo, parts.hi) > 0;
}

namespace {

std::optional<LinearForm> linear_total(const RatVector& c, const OracleVector& xs) {
  LinearForm acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (c[i] == 0) continue;
    auto f = linear_form(xs[i]);
    if (!f) return std::nullopt;
    acc = form_add(acc, form_scale(*f, c[i]));
  }
  return acc;
}

std::optional<AlgebraicForm> algebraic_total(const RatVector& c, const OracleVector& xs) {
  AlgebraicForm total{std::nullopt, QPoly()};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (c[i] == 0) continue;
    auto f = algebraic_form(xs[i]);
    if (!f) return std::nullopt;
    std::optional<RealOracle> root;
    if (!merge_roots(total, *f, root)) return std::nullopt;
    total = AlgebraicForm{root, total.value + f->value.scaled(c[i])};
  }
  return total;
}

}  // namespace

std::optional<bool> exact_zero_combination(const IntVector& m, const OracleVector& xs) {
  RatVector c(m.begin(), m.end());
  return exact_zero_combination(c, xs);
}

std::optional<bool> exact_zero_combination(const RatVector& c, const OracleVector& xs) {
  if (c.size() != xs.size()) fail(ErrorCode::LengthMismatch, "coefficient and value counts differ");
  if (auto lin = linear_total(c, xs)) return form_is_zero(*lin);
  if (auto alg = algebraic_total(c, xs)) return algebraic_form_is_zero(*alg);
  return std::nullopt;
}

std::optional<Rational> exact_rational_combination(const RatVector& c, const OracleVector& xs) {
  if (c.size() != xs.size()) fail(ErrorCode::LengthMismatch, "coefficient and value counts differ");
  if (auto lin = linear_total(c, xs)) return form_rational(*lin);
  if (auto alg = algebraic_total(c, xs)) {
    if (algebraic_form_is_zero(*alg)) return Rational(0);
    if (alg->value.degree() <= 0) return alg->value.coeff(0);
  }
  return std::nullopt;
}

}  // namespace diophlab
