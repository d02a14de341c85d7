#include "diophlab/polyapprox/polyapprox.hpp"

#include <algorithm>

#include "json.hpp"
#include "diophlab/core/error.hpp"
#include "diophlab/numeric/exact.hpp"

namespace diophlab::polyapprox {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t k = std::max(a.size(), b.size()); k-- > 0;) {
    unsigned ea = k < a.size() ? a[k] : 0, eb = k < b.size() ? b[k] : 0;
    if (ea != eb) return ea < eb;
  }
  return false;
}

namespace {

void enumerate(std::size_t vars, unsigned remaining, Monomial& cur, std::size_t pos, std::vector<Monomial>& out) {
  if (pos + 1 == vars) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate(vars, remaining - e, cur, pos + 1, out);
  }
}

lattice::RelationOptions options_for(const Integer& h, const Config& config) {
  lattice::RelationOptions o;
  o.height = h;
  o.precision = config.precision;
  o.precision_cap = config.precision_cap;
  o.delta = config.delta;
  return o;
}

}  // namespace

std::vector<Monomial> monomials(std::size_t vars, unsigned d, bool with_constant) {
  if (vars == 0) fail(ErrorCode::InvalidArgument, "at least one variable is required");
  std::vector<Monomial> out;
  for (unsigned deg = with_constant ? 0 : 1; deg <= d; ++deg) {
    std::vector<Monomial> level;
    Monomial cur(vars, 0);
    enumerate(vars, deg, cur, 0, level);
    std::sort(level.begin(), level.end(), GradedOrder{});
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t monomial_count(std::size_t vars, unsigned d) { return monomials(vars, d, false).size(); }

IntPolynomial IntPolynomial::univariate(const IntVector& ascending) {
  IntPolynomial p(1);
  for (std::size_t k = 0; k < ascending.size(); ++k) p.add_term({static_cast<unsigned>(k)}, ascending[k]);
  return p;
}

IntPolynomial IntPolynomial::from_terms(std::size_t vars, const std::vector<std::pair<Monomial, Integer>>& terms) {
  IntPolynomial p(vars);
  for (const auto& [m, c] : terms) {
    if (m.size() != vars) fail(ErrorCode::DimensionMismatch, "exponent tuple length differs from variable count");
    p.add_term(m, c);
  }
  return p;
}

IntPolynomial IntPolynomial::parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("polynomial is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) fail(ErrorCode::Parse, "polynomial must be a nonempty JSON object");
  std::vector<std::pair<Monomial, Integer>> terms;
  std::size_t vars = 0;
  for (const auto& [key, value] : j.items()) {
    Monomial m;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = key.find(',', start);
      std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      Integer e = parse_integer(part);
      if (e < 0 || !e.fits_uint_p()) fail(ErrorCode::Parse, "bad exponent '" + part + "'");
      m.push_back(static_cast<unsigned>(e.get_ui()));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (vars == 0) vars = m.size();
    if (m.size() != vars) fail(ErrorCode::Parse, "exponent tuples of different lengths");
    Integer c = value.is_string() ? parse_integer(value.get<std::string>())
                : value.is_number_integer() ? parse_integer(value.dump())
                                            : (fail(ErrorCode::Parse, "coefficients must be integers"), Integer(0));
    terms.emplace_back(std::move(m), c);
  }
  return from_terms(vars, terms);
}

unsigned IntPolynomial::degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

Integer IntPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void IntPolynomial::add_term(const Monomial& m, const Integer& c) {
  if (m.size() != vars_) fail(ErrorCode::DimensionMismatch, "monomial has wrong variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

const Monomial& IntPolynomial::leading_monomial() const {
  if (terms_.empty()) fail(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  return terms_.rbegin()->first;
}

const Integer& IntPolynomial::leading_coefficient() const {
  if (terms_.empty()) fail(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.vars_ != b.vars_) fail(ErrorCode::DimensionMismatch, "variable counts differ");
  IntPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.vars_ != b.vars_) fail(ErrorCode::DimensionMismatch, "variable counts differ");
  IntPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.vars_ != b.vars_) fail(ErrorCode::DimensionMismatch, "variable counts differ");
  IntPolynomial out(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(a.vars_);
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
      out.add_term(m, ca * cb);
    }
  return out;
}

IntPolynomial IntPolynomial::normalized() const {
  if (terms_.empty()) return *this;
  Integer g = 0;
  for (const auto& [m, c] : terms_) g = gcd(g, c);
  if (leading_coefficient() < 0) g = -g;
  IntPolynomial out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, Integer(c / g));
  return out;
}

IntVector IntPolynomial::univariate_coefficients() const {
  if (vars_ != 1) fail(ErrorCode::DimensionMismatch, "polynomial is not univariate");
  IntVector out(degree() + 1, Integer(0));
  for (const auto& [m, c] : terms_) out[m[0]] = c;
  return out;
}

QPoly IntPolynomial::to_qpoly() const { return QPoly::from_integers(univariate_coefficients()); }

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_ == 1 ? "X" : "X" + std::to_string(k + 1);
      if (m[k] > 1) mono += "^" + std::to_string(m[k]);
    }
    Integer a = abs(c);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    first = false;
    if (mono.empty()) out += diophlab::to_string(a);
    else if (a == 1) out += mono;
    else out += diophlab::to_string(a) + "*" + mono;
  }
  return out;
}

std::map<std::string, std::string> IntPolynomial::to_map() const {
  std::map<std::string, std::string> out;
  for (const auto& [m, c] : terms_) {
    std::string key;
    for (std::size_t k = 0; k < m.size(); ++k) key += (k ? "," : "") + std::to_string(m[k]);
    out[key] = diophlab::to_string(c);
  }
  return out;
}

RealOracle monomial_oracle(const OracleVector& theta, const Monomial& m) {
  if (m.size() != theta.size()) fail(ErrorCode::DimensionMismatch, "monomial and point dimensions differ");
  RealOracle out = RealOracle::integer(1);
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] > 0) out = out * (m[k] == 1 ? theta[k] : theta[k].pow(m[k]));
  return out;
}

PrecisionReal poly_error(const OracleVector& theta, const IntPolynomial& f, long bits) {
  if (f.variables() != theta.size())
    fail(ErrorCode::DimensionMismatch, "polynomial has " + std::to_string(f.variables()) + " variables, point has " +
                                           std::to_string(theta.size()));
  if (f.is_zero()) return PrecisionReal(Rational(0), bits);
  OracleVector xs;
  RatVector cs;
  long cbits = 1;
  for (const auto& [m, c] : f.terms()) {
    xs.push_back(monomial_oracle(theta, m));
    cs.emplace_back(c);
    cbits = std::max<long>(cbits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  if (auto q = exact_rational_combination(cs, xs)) return PrecisionReal(*q, bits);
  if (auto z = exact_zero_combination(cs, xs); z && *z) return PrecisionReal(Rational(0), bits);
  const long work = bits + cbits + static_cast<long>(xs.size()) + 8;
  PrecisionReal acc(Rational(0), work);
  for (std::size_t k = 0; k < xs.size(); ++k) acc = acc + PrecisionReal(cs[k], work) * xs[k].eval(work);
  return acc;
}

PolyCertificate minimal_polynomial(const RealOracle& theta, unsigned dmax, const Integer& hmax, const Config& config) {
  if (dmax < 1) fail(ErrorCode::InvalidArgument, "degree bound must be at least 1");
  if (hmax < 1) fail(ErrorCode::NotPositive, "height bound must be positive");
  PolyCertificate out;
  OracleVector xs{RealOracle::integer(1)};
  for (unsigned d = 1; d <= dmax; ++d) {
    xs.push_back(d == 1 ? theta : theta.pow(d));
    out.degree_searched = d;
    out.relation = lattice::integer_relation(xs, options_for(hmax, config));
    if (out.relation.found()) {
      out.polynomial = IntPolynomial::univariate(out.relation.relation).normalized();
      return out;
    }
  }
  out.relation.degree_bound = dmax;
  return out;
}

PolyCertificate algebraic_dependence(const OracleVector& theta, unsigned dmax, const Integer& hmax,
                                     const Config& config, bool dagger) {
  if (theta.empty()) fail(ErrorCode::InvalidArgument, "at least one number is required");
  if (dmax < 1) fail(ErrorCode::InvalidArgument, "degree bound must be at least 1");
  if (hmax < 1) fail(ErrorCode::NotPositive, "height bound must be positive");
  PolyCertificate out;
  for (unsigned d = 1; d <= dmax; ++d) {
    std::vector<Monomial> mons = monomials(theta.size(), d, !dagger);
    out.degree_searched = d;
    if (mons.size() < 2) continue;
    OracleVector xs;
    for (const auto& m : mons) xs.push_back(monomial_oracle(theta, m));
    out.relation = lattice::integer_relation(xs, options_for(hmax, config));
    if (out.relation.found()) {
      IntPolynomial p(theta.size());
      for (std::size_t k = 0; k < mons.size(); ++k) p.add_term(mons[k], out.relation.relation[k]);
      out.polynomial = p.normalized();
      return out;
    }
  }
  out.relation.degree_bound = dmax;
  return out;
}

std::vector<IntPolynomial> relations_up_to(const RealOracle& theta, unsigned dmax, const Integer& hmax,
                                           const Config& config) {
  std::vector<IntPolynomial> out;
  OracleVector xs{RealOracle::integer(1)};
  for (unsigned d = 1; d <= dmax; ++d) {
    xs.push_back(d == 1 ? theta : theta.pow(d));
    OracleMatrix rows{xs};
    auto lat = lattice::relation_lattice(rows, options_for(hmax, config));
    for (const auto& c : lat.basis) out.push_back(IntPolynomial::univariate(c.relation).normalized());
  }
  return out;
}

ContainmentReport ideal_containment(const std::vector<IntPolynomial>& found, const IntPolynomial& m) {
  if (m.is_zero()) fail(ErrorCode::InvalidArgument, "divisor must be nonzero");
  if (m.variables() != 1) fail(ErrorCode::DimensionMismatch, "ideal containment is univariate");
  const QPoly mq = m.to_qpoly();
  ContainmentReport r;
  for (const auto& f : found) {
    if (f.variables() != 1) fail(ErrorCode::DimensionMismatch, "ideal containment is univariate");
    ContainmentItem item{f, false, {}, {}};
    auto [q, rem] = QPoly::divmod(f.to_qpoly(), mq);
    item.quotient = q;
    item.remainder = rem;
    item.divisible = rem.is_zero();
    if (!item.divisible && !r.counterexample) r.counterexample = r.items.size();
    r.items.push_back(std::move(item));
  }
  return r;
}

PolySequence PolySequence::of(std::vector<IntPolynomial> polys, unsigned degree_bound) {
  for (const auto& p : polys)
    if (!p.is_zero() && p.degree() > degree_bound)
      fail(ErrorCode::InvalidArgument, "polynomial " + p.to_string() + " exceeds degree bound");
  return PolySequence{std::move(polys), degree_bound};
}

PolySequence PolySequence::operator+(const PolySequence& o) const {
  if (polys.size() != o.polys.size()) fail(ErrorCode::LengthMismatch, "sequence lengths differ");
  PolySequence out;
  out.degree_bound = std::max(degree_bound, o.degree_bound);
  for (std::size_t i = 0; i < polys.size(); ++i) out.polys.push_back(polys[i] + o.polys[i]);
  return out;
}

PolySequence PolySequence::operator*(const PolySequence& o) const {
  if (polys.size() != o.polys.size()) fail(ErrorCode::LengthMismatch, "sequence lengths differ");
  PolySequence out;
  out.degree_bound = degree_bound + o.degree_bound;
  for (std::size_t i = 0; i < polys.size(); ++i) out.polys.push_back(polys[i] * o.polys[i]);
  return out;
}

std::vector<PrecisionReal> PolySequence::profile(const OracleVector& theta, long bits) const {
  std::vector<PrecisionReal> out;
  for (const auto& p : polys) out.push_back(poly_error(theta, p, bits));
  return out;
}

}  // namespace diophlab::polyapprox
