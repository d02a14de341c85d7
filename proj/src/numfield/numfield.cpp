#include "diophlab/numfield/numfield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "diophlab/core/error.hpp"
#include "diophlab/numeric/exact.hpp"
#include "json.hpp"
#include "toml/toml.hpp"

namespace diophlab::numfield {
namespace {

constexpr long kCheckBits = 192;

long bit_length(const Integer& z) { return z == 0 ? 1 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

RatVector unit(std::size_t d, std::size_t j) {
  RatVector v(d, Rational(0));
  v[j] = 1;
  return v;
}

void add_scaled(RatVector& acc, const RatVector& v, const Rational& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

PrecisionReal interval_det(std::vector<std::vector<PrecisionReal>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  PrecisionReal total(Rational(0), m[0][0].precision());
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<PrecisionReal>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<PrecisionReal> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    PrecisionReal term = m[0][c] * interval_det(std::move(minor));
    total = c % 2 == 0 ? total + term : total - term;
  }
  return total;
}

Rational rational_det(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Rational toml_rational(const toml::node& n) {
  if (auto v = n.as_integer()) return Rational(Integer(std::to_string(v->get())));
  if (auto v = n.as_string()) return parse_rational(v->get());
  fail(ErrorCode::Parse, "field definition: expected an integer or a rational string");
}

RatVector toml_vector(const toml::node& n, std::size_t d, const std::string& what) {
  const toml::array* a = n.as_array();
  if (!a || a->size() != d) fail(ErrorCode::Parse, "field definition: " + what + " needs " + std::to_string(d) + " entries");
  RatVector v;
  for (const auto& x : *a) v.push_back(toml_rational(x));
  return v;
}

PrecisionReal exact_or_interval(const RatVector& c, const OracleVector& xs, long bits) {
  if (auto q = exact_rational_combination(c, xs)) return PrecisionReal(*q, bits);
  PrecisionReal acc(Rational(0), bits);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) acc = acc + PrecisionReal(c[j], bits) * xs[j].eval(bits);
  return acc;
}

// Upper bound on |x| as a double, rounded outward.
double abs_upper(const PrecisionReal& x) {
  Interval a = x.enclosure().abs();
  return a.hi().to_double() * (1 + 1e-12) + 1e-300;
}

ContinuedFraction long_expansion(const RealOracle& theta, const Config& config) {
  try {
    return dagroups::convergents(theta, 400, config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionInsufficient) throw;
    return dagroups::convergents(theta, 60, config);
  }
}

IntVector integral_coords(const FieldElement& x, const std::string& what) {
  IntVector out;
  for (const auto& c : x.coords) {
    if (c.get_den() != 1) fail(ErrorCode::InvalidArgument, what + " must lie in O (integer coordinates)");
    out.push_back(c.get_num());
  }
  return out;
}

}  // namespace

bool FieldElement::integral() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c.get_den() == 1; });
}

NumberField NumberField::rationals() {
  NumberField k;
  k.name_ = "Q";
  k.names_ = {"1"};
  k.table_ = {{RatVector{Rational(1)}}};
  k.embed_ = {{RealOracle::integer(1)}};
  k.validate();
  return k;
}

NumberField NumberField::quadratic(const Integer& d) {
  if (d <= 1) fail(ErrorCode::InvalidArgument, "Q(sqrt D) needs D > 1 for a totally real quadratic field");
  if (squarefree_split(d).square_root_part != 1) fail(ErrorCode::InvalidArgument, "D = " + to_string(d) + " is not squarefree");
  NumberField k;
  k.name_ = "Q(sqrt " + to_string(d) + ")";
  k.names_ = {"1", "w"};
  const bool one_mod_four = d % 4 == 1;
  RatVector ww = one_mod_four ? RatVector{ratio(Integer(d - 1), 4), Rational(1)} : RatVector{Rational(d), Rational(0)};
  k.table_ = {{unit(2, 0), unit(2, 1)}, {unit(2, 1), ww}};
  if (one_mod_four) {
    k.embed_ = {{RealOracle::integer(1), RealOracle::surd(1, 1, 2, d)},
                {RealOracle::integer(1), RealOracle::surd(1, -1, 2, d)}};
    k.autos_ = {{unit(2, 0), RatVector{Rational(1), Rational(-1)}}};
  } else {
    k.embed_ = {{RealOracle::integer(1), RealOracle::surd(0, 1, 1, d)},
                {RealOracle::integer(1), RealOracle::surd(0, -1, 1, d)}};
    k.autos_ = {{unit(2, 0), RatVector{Rational(0), Rational(-1)}}};
  }
  k.validate();
  return k;
}

NumberField NumberField::maxreal7() {
  // c = 2cos(2pi/7): c^3 = -c^2 + 2c + 1, c^4 = 3c^2 - c - 1.
  NumberField k;
  k.name_ = "maxreal7";
  k.names_ = {"1", "c", "c2"};
  auto v = [](long a, long b, long c) { return RatVector{Rational(a), Rational(b), Rational(c)}; };
  k.table_ = {{v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)},
              {v(0, 1, 0), v(0, 0, 1), v(1, 2, -1)},
              {v(0, 0, 1), v(1, 2, -1), v(-1, -1, 3)}};
  const IntVector minpoly{-1, -2, 1, 1};
  const std::vector<std::pair<Rational, Rational>> brackets{
      {Rational(1), Rational(3, 2)}, {Rational(-1, 2), Rational(0)}, {Rational(-2), Rational(-3, 2)}};
  for (const auto& [lo, hi] : brackets) {
    RealOracle c = RealOracle::algebraic(minpoly, lo, hi);
    k.embed_.push_back({RealOracle::integer(1), c, c.pow(2)});
  }
  // sigma: c -> c^2 - 2, which sends 2cos(2pi k/7) to 2cos(4pi k/7).
  k.autos_ = {{v(1, 0, 0), v(-2, 0, 1), v(3, -1, -1)}};
  k.validate();
  return k;
}

NumberField NumberField::from_toml(const std::string& document) {
  toml::table t;
  try {
    t = toml::parse(document);
  } catch (const toml::parse_error& e) {
    fail(ErrorCode::Parse, std::string("field definition: ") + std::string(e.description()));
  }
  NumberField k;
  k.name_ = t["name"].value_or(std::string("custom"));
  const toml::array* basis = t["basis"].as_array();
  if (!basis || basis->empty()) fail(ErrorCode::Parse, "field definition: missing basis names");
  for (const auto& b : *basis) {
    auto s = b.value<std::string>();
    if (!s || s->empty()) fail(ErrorCode::Parse, "field definition: basis names must be nonempty strings");
    k.names_.push_back(*s);
  }
  const std::size_t d = k.names_.size();
  if (auto deg = t["degree"].value<long long>(); deg && static_cast<std::size_t>(*deg) != d)
    fail(ErrorCode::Parse, "field definition: degree disagrees with the basis length");
  const toml::array* table = t["table"].as_array();
  if (!table || table->size() != d) fail(ErrorCode::Parse, "field definition: table needs d rows");
  for (const auto& row : *table) {
    const toml::array* r = row.as_array();
    if (!r || r->size() != d) fail(ErrorCode::Parse, "field definition: table rows need d products");
    std::vector<RatVector> out;
    for (const auto& cell : *r) out.push_back(toml_vector(cell, d, "a product"));
    k.table_.push_back(std::move(out));
  }
  const toml::array* emb = t["embeddings"].as_array();
  if (!emb || emb->size() != d) fail(ErrorCode::Parse, "field definition: embeddings need one row per place");
  for (const auto& row : *emb) {
    const toml::array* r = row.as_array();
    if (!r || r->size() != d) fail(ErrorCode::Parse, "field definition: embedding rows need d oracle literals");
    OracleVector out;
    for (const auto& cell : *r) {
      auto s = cell.value<std::string>();
      if (!s) fail(ErrorCode::Parse, "field definition: embeddings are oracle literal strings");
      out.push_back(RealOracle::parse(*s));
    }
    k.embed_.push_back(std::move(out));
  }
  if (const toml::array* autos = t["automorphisms"].as_array()) {
    for (const auto& a : *autos) {
      const toml::array* imgs = a.as_array();
      if (!imgs || imgs->size() != d) fail(ErrorCode::Parse, "field definition: an automorphism lists d images");
      RatMatrix sigma;
      for (const auto& img : *imgs) sigma.push_back(toml_vector(img, d, "an automorphism image"));
      k.autos_.push_back(std::move(sigma));
    }
  }
  k.validate();
  return k;
}

NumberField NumberField::from_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot read field definition " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_toml(ss.str());
}

NumberField NumberField::parse(std::string_view name) {
  std::string s(name);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  if (s == "Q") return rationals();
  if (s == "maxreal7") return maxreal7();
  static const std::regex quad(R"(Q\(\s*sqrt\s*\(?\s*([0-9]+)\s*\)?\s*\))");
  std::smatch m;
  if (std::regex_match(s, m, quad)) return quadratic(Integer(m[1].str()));
  if (std::filesystem::exists(s)) return from_toml_file(s);
  fail(ErrorCode::Parse, "unknown field '" + s + "' (expected Q, Q(sqrt D), maxreal7 or a TOML file)");
}

void NumberField::validate() const {
  const std::size_t d = degree();
  if (d == 0) fail(ErrorCode::InvalidArgument, "field of degree 0");
  if (names_.front() != "1") fail(ErrorCode::InvalidArgument, "the first basis element must be named 1");
  if (table_.size() != d || embed_.size() != d) fail(ErrorCode::DimensionMismatch, "field data of inconsistent size");
  for (std::size_t i = 0; i < d; ++i) {
    if (table_[i].size() != d || embed_[i].size() != d) fail(ErrorCode::DimensionMismatch, "field data of inconsistent size");
    for (std::size_t j = 0; j < d; ++j)
      if (table_[i][j].size() != d) fail(ErrorCode::DimensionMismatch, "product of inconsistent length");
  }
  for (std::size_t j = 0; j < d; ++j)
    if (table_[0][j] != unit(d, j) || table_[j][0] != unit(d, j))
      fail(ErrorCode::InvalidArgument, "alpha_1 is not the identity of the multiplication table");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (table_[i][j] != table_[j][i]) fail(ErrorCode::InvalidArgument, "multiplication table is not commutative");
  // (a_i a_j) a_k = a_i (a_j a_k) on every basis triple.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        RatVector left(d, Rational(0)), right(d, Rational(0));
        for (std::size_t m = 0; m < d; ++m) {
          add_scaled(left, table_[m][k], table_[i][j][m]);
          add_scaled(right, table_[i][m], table_[j][k][m]);
        }
        if (left != right) fail(ErrorCode::InvalidArgument, "multiplication table is not associative");
      }
  // Every place must respect the table.
  for (std::size_t nu = 0; nu < d; ++nu)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        PrecisionReal lhs = embed_[nu][i].eval(kCheckBits) * embed_[nu][j].eval(kCheckBits);
        PrecisionReal rhs = exact_or_interval(table_[i][j], embed_[nu], kCheckBits);
        if ((lhs - rhs).certainly_nonzero())
          fail(ErrorCode::InvalidArgument, "embedding " + std::to_string(nu + 1) + " does not respect the table");
      }
  if (d > 8) fail(ErrorCode::InvalidArgument, "fields of degree above 8 are not supported");
  std::vector<std::vector<PrecisionReal>> e(d);
  for (std::size_t nu = 0; nu < d; ++nu)
    for (std::size_t j = 0; j < d; ++j) e[nu].push_back(embed_[nu][j].eval(kCheckBits));
  if (!interval_det(e).certainly_nonzero()) fail(ErrorCode::InvalidArgument, "det E is not certified nonzero");
  for (const auto& sigma : autos_) check_automorphism(*this, sigma);
}

FieldElement NumberField::element(RatVector coords) const {
  if (coords.size() != degree())
    fail(ErrorCode::DimensionMismatch, "element needs " + std::to_string(degree()) + " coordinates");
  return FieldElement{std::move(coords)};
}

FieldElement NumberField::zero() const { return FieldElement{RatVector(degree(), Rational(0))}; }
FieldElement NumberField::basis(std::size_t j) const { return FieldElement{unit(degree(), j)}; }

FieldElement NumberField::from_integer(const Integer& n) const {
  FieldElement x = zero();
  x.coords[0] = n;
  return x;
}

FieldElement NumberField::one_a() const { return FieldElement{RatVector(degree(), Rational(1))}; }

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = a;
  for (std::size_t i = 0; i < degree(); ++i) out.coords[i] += b.coords[i];
  return out;
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const { return add(a, scale(b, -1)); }

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = zero();
  for (std::size_t i = 0; i < degree(); ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < degree(); ++j) add_scaled(out.coords, table_[i][j], a.coords[i] * b.coords[j]);
  }
  return out;
}

FieldElement NumberField::scale(const FieldElement& a, const Rational& q) const {
  FieldElement out = a;
  for (auto& c : out.coords) c *= q;
  return out;
}

RatMatrix NumberField::multiplication_matrix(const FieldElement& x) const {
  const std::size_t d = degree();
  RatMatrix m(d, RatVector(d, Rational(0)));
  for (std::size_t j = 0; j < d; ++j) {
    FieldElement col = mul(x, basis(j));
    for (std::size_t r = 0; r < d; ++r) m[r][j] = col.coords[r];
  }
  return m;
}

Rational NumberField::trace(const FieldElement& x) const {
  RatMatrix m = multiplication_matrix(x);
  Rational t = 0;
  for (std::size_t i = 0; i < degree(); ++i) t += m[i][i];
  return t;
}

Rational NumberField::norm(const FieldElement& x) const { return rational_det(multiplication_matrix(x)); }

Rational NumberField::minkowski_norm2(const FieldElement& x) const { return trace(mul(x, x)); }

std::vector<PrecisionReal> NumberField::embed(const FieldElement& x, long bits) const {
  std::vector<PrecisionReal> out;
  for (std::size_t nu = 0; nu < degree(); ++nu) out.push_back(exact_or_interval(x.coords, embed_[nu], bits));
  return out;
}

RealOracle NumberField::place_oracle(const FieldElement& x, std::size_t place) const {
  std::optional<RealOracle> acc;
  for (std::size_t j = 0; j < degree(); ++j) {
    if (x.coords[j] == 0) continue;
    RealOracle term = embed_[place][j].scaled(x.coords[j]);
    acc = acc ? *acc + term : term;
  }
  return acc ? *acc : RealOracle::integer(0);
}

FieldElement NumberField::apply(const RatMatrix& sigma, const FieldElement& x) const {
  FieldElement out = zero();
  for (std::size_t j = 0; j < degree(); ++j) add_scaled(out.coords, sigma[j], x.coords[j]);
  return out;
}

FieldElement NumberField::parse_element(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorCode::Parse, "empty field element");
  if (s.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, std::string("field element: ") + e.what());
    }
    if (!j.is_array()) fail(ErrorCode::Parse, "field element: expected a coordinate list");
    RatVector coords;
    for (const auto& v : j) {
      if (v.is_number_integer()) coords.emplace_back(Integer(v.dump()));
      else if (v.is_string()) coords.push_back(parse_rational(v.get<std::string>()));
      else fail(ErrorCode::Parse, "field element: coordinates are integers or rational strings");
    }
    return element(std::move(coords));
  }
  FieldElement x = zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      fail(ErrorCode::Parse, "field element: expected + or - at '" + s.substr(pos) + "'");
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/' || s[pos] == '.')) ++pos;
    std::optional<Rational> coef;
    if (pos > start) coef = parse_rational(s.substr(start, pos - start));
    bool star = pos < s.size() && s[pos] == '*';
    if (star) ++pos;
    // Longest basis name at this position; numeric names only after '*'.
    std::optional<std::size_t> which;
    std::size_t best = 0;
    for (std::size_t j = 0; j < degree(); ++j) {
      const std::string& n = names_[j];
      if (!star && std::isdigit(static_cast<unsigned char>(n.front()))) continue;
      if (s.compare(pos, n.size(), n) == 0 && n.size() > best) {
        best = n.size();
        which = j;
      }
    }
    if (!which && (star || !coef)) fail(ErrorCode::Parse, "field element: unknown basis name at '" + s.substr(pos) + "'");
    pos += best;
    x.coords[which.value_or(0)] += sign * coef.value_or(Rational(1));
  }
  return x;
}

std::string NumberField::format(const FieldElement& x) const {
  std::string out;
  for (std::size_t j = 0; j < degree(); ++j) {
    const Rational& c = x.coords[j];
    if (c == 0) continue;
    Rational a = abs(c);
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (j == 0) out += to_string(a);
    else out += (a == 1 ? std::string() : to_string(a) + "*") + names_[j];
  }
  return out.empty() ? "0" : out;
}

Rational a_norm2(const FieldElement& x) {
  Rational s = 0;
  for (const auto& c : x.coords) s += c * c;
  return s;
}

bool a_positive(const FieldElement& x) {
  return std::all_of(x.coords.begin(), x.coords.end(), [](const Rational& c) { return c > 0; });
}

OApproxSequence o_sequence_from(const NumberField& k, const RealOracle& theta,
                                const std::vector<dagroups::ApproxSequence>& coordinates, const Config& config) {
  const std::size_t d = k.degree();
  if (coordinates.size() != d) fail(ErrorCode::DimensionMismatch, "one coordinate sequence per basis element");
  const std::size_t n = coordinates.front().size();
  OApproxSequence out;
  out.theta = theta.literal();
  out.method = "coordinates";
  std::vector<FieldElement> duals;
  bool bound = true;
  for (const auto& c : coordinates) {
    if (c.size() != n) fail(ErrorCode::LengthMismatch, "coordinate sequences differ in length");
    bound = bound && c.duals && c.theta == theta.literal();
  }
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement e = k.zero(), p = k.zero();
    for (std::size_t j = 0; j < d; ++j) {
      e.coords[j] = coordinates[j].entries[i];
      if (bound) p.coords[j] = (*coordinates[j].duals)[i];
    }
    out.entries.push_back(std::move(e));
    duals.push_back(std::move(p));
  }
  if (!bound) return out;
  out.duals = std::move(duals);
  // |eps_nu,i| <= sum_j |nu(alpha_j)| C_j 2^(-lambda_j i).
  double c_total = 0, lambda = 1e300;
  for (std::size_t j = 0; j < d; ++j) {
    const auto* cert = coordinates[j].certificate_for(theta.literal());
    if (!cert) return out;
    double worst = 0;
    for (std::size_t nu = 0; nu < d; ++nu) worst = std::max(worst, abs_upper(k.embedding(nu, j).eval(config.precision)));
    c_total += worst * cert->C;
    lambda = std::min(lambda, cert->lambda);
  }
  out.certificates.push_back({theta.literal(), c_total, lambda});
  return out;
}

OApproxSequence diagonal_sequence(const NumberField& k, const dagroups::ApproxSequence& seq) {
  OApproxSequence out;
  out.theta = seq.theta;
  out.method = "diagonal(" + seq.method + ")";
  out.certificates = seq.certificates;  // |nu(1)| = 1 at every place
  std::vector<FieldElement> duals;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.entries.push_back(k.from_integer(seq.entries[i]));
    if (seq.duals) duals.push_back(k.from_integer((*seq.duals)[i]));
  }
  if (seq.duals) out.duals = std::move(duals);
  return out;
}

OApproxSequence half_shift_sequence(const NumberField& k, const RealOracle& theta, std::size_t n,
                                    const Config& config) {
  if (k.degree() != 2) fail(ErrorCode::InvalidArgument, "the half-shift construction needs a quadratic field");
  if (theta.is_rational()) fail(ErrorCode::RationalTheta, "the half-shift construction needs irrational theta");
  const ContinuedFraction cf = long_expansion(theta, config);
  const RealOracle half = RealOracle::rational(Rational(1, 2));
  // n w theta - n' w = -1/2 at the first place: n theta - n' = -1 / (2 nu_1(w)).
  const RealOracle shift = k.embedding(0, 1).reciprocal().scaled(Rational(-1, 2));
  OApproxSequence out;
  out.theta = theta.literal();
  out.method = "half-shift";
  std::vector<FieldElement> duals;
  // Entry i uses its own convergent q_t, so both errors stay below 3/(2 q_t).
  const double w_abs = abs_upper(k.embedding(0, 1).eval(config.precision));
  std::vector<double> log2_bounds;
  std::size_t t = 0;
  while (t < cf.convergents.size() && cf.convergents[t].second < 16) ++t;
  for (std::size_t i = 1; i <= n; ++i, ++t) {
    const Rational delta = Rational(1, 2);
    auto m = dagroups::inhomogeneous_approx(theta, half, delta, cf, config, t);
    auto w = dagroups::inhomogeneous_approx(theta, shift, delta, cf, config, t);
    if (!m || !w || t >= cf.convergents.size())
      fail(ErrorCode::SearchExhausted, "half-shift index " + std::to_string(i) + ": expansion too short");
    out.entries.push_back(k.element({Rational(m->n), Rational(w->n)}));
    duals.push_back(k.element({Rational(m->k), Rational(w->k)}));
    const Integer& q = cf.convergents[t].second;
    log2_bounds.push_back(std::log2(1.5 * (1 + w_abs)) - std::log2(q.get_d()));
  }
  out.duals = std::move(duals);
  // |eps_1,i| <= |m theta - m' - 1/2| + |nu_1(w)| |n theta - n' - shift| < (1 + |nu_1(w)|) 3/(2 q_t).
  out.local_certificates.emplace(0, dagroups::certificate_from_bounds(theta.literal(), log2_bounds));
  return out;
}

OProfiles o_error_profiles(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                           const Config& config) {
  const std::size_t d = k.degree();
  OProfiles out;
  out.eps.assign(d, {});
  const bool stored = seq.duals && seq.theta == theta.literal();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const FieldElement& a = seq.entries[i];
    if (a.coords.size() != d) fail(ErrorCode::DimensionMismatch, "entry of the wrong degree");
    FieldElement dual = k.zero();
    if (stored) {
      dual = (*seq.duals)[i];
    } else {
      long bits = config.precision;
      for (const auto& c : a.coords) bits = std::max(bits, config.precision + bit_length(c.get_num()));
      for (std::size_t j = 0; j < d; ++j)
        dual.coords[j] = nearest_integer(theta.scaled(a.coords[j]), bits, config.precision_cap).n;
    }
    for (std::size_t nu = 0; nu < d; ++nu) {
      OracleVector xs;
      RatVector c;
      for (std::size_t j = 0; j < d; ++j) {
        xs.push_back(k.embedding(nu, j) * theta);
        c.push_back(a.coords[j]);
      }
      for (std::size_t j = 0; j < d; ++j) {
        xs.push_back(k.embedding(nu, j));
        c.push_back(-dual.coords[j]);
      }
      std::optional<PrecisionReal> eps;
      if (auto q = exact_rational_combination(c, xs)) eps = PrecisionReal(*q, config.precision);
      for (long bits = config.precision; !eps; bits *= 2) {
        PrecisionReal acc(Rational(0), bits);
        for (std::size_t j = 0; j < c.size(); ++j)
          if (c[j] != 0) acc = acc + PrecisionReal(c[j], bits) * xs[j].eval(bits);
        if (acc.enclosure().width_within(config.precision / 2) || bits * 2 > config.precision_cap) eps = acc;
      }
      out.eps[nu].push_back(*eps);
    }
    out.duals.push_back(std::move(dual));
  }
  return out;
}

OVerdict o_membership(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq, double tau,
                      const Config& config) {
  if (!(tau > 0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  if (seq.size() == 0) fail(ErrorCode::InvalidArgument, "empty sequence");
  OVerdict out;
  out.tau = tau;
  out.profiles = o_error_profiles(k, theta, seq, config);
  const dagroups::DecayCertificate* cert = nullptr;
  for (const auto& c : seq.certificates)
    if (c.theta == theta.literal()) cert = &c;
  bool all_certified = true;
  for (std::size_t nu = 0; nu < k.degree(); ++nu) {
    auto local = seq.local_certificates.find(nu);
    const dagroups::DecayCertificate* use =
        local != seq.local_certificates.end() && local->second.theta == theta.literal() ? &local->second : cert;
    dagroups::MembershipVerdict v = dagroups::classify_errors(out.profiles.eps[nu], use, tau, config);
    if (!v.member() && !out.witness_place) out.witness_place = nu + 1;
    all_certified = all_certified && v.status == dagroups::MembershipStatus::CertifiedMember;
    out.places.push_back(std::move(v));
  }
  if (out.witness_place) out.global = dagroups::MembershipStatus::NotMember;
  else out.global = all_certified ? dagroups::MembershipStatus::CertifiedMember : dagroups::MembershipStatus::EmpiricalMember;
  return out;
}

KRationalResult krational_test(const NumberField& k, const RealOracle& theta, const Integer& height,
                               const Config& config) {
  if (height < 1) fail(ErrorCode::InvalidArgument, "height bound must be at least 1");
  const std::size_t d = k.degree();
  KRationalResult out;
  out.height = height;
  out.alpha = k.zero();
  out.beta = k.zero();
  lattice::RelationOptions opts{height, config.precision, config.precision_cap, config.delta};
  double floor = 1e300;
  bool all_proven = true;
  for (std::size_t nu = 0; nu < d; ++nu) {
    OracleVector xs;
    for (std::size_t j = 0; j < d; ++j) xs.push_back(k.embedding(nu, j) * theta);
    for (std::size_t j = 0; j < d; ++j) xs.push_back(k.embedding(nu, j));
    lattice::RelationCertificate rel = lattice::integer_relation(xs, opts);
    if (rel.found()) {
      // sum a_j nu(alpha_j) theta + sum b_j nu(alpha_j) = 0, so alpha theta = -b.
      FieldElement alpha = k.zero(), beta = k.zero();
      for (std::size_t j = 0; j < d; ++j) {
        alpha.coords[j] = rel.relation[j];
        beta.coords[j] = -rel.relation[d + j];
      }
      if (alpha == k.zero()) continue;  // impossible for a valid basis
      if (alpha.coords[0] < 0 || (alpha.coords[0] == 0 && a_norm2(alpha) > 0 &&
                                  std::find_if(alpha.coords.begin(), alpha.coords.end(),
                                               [](const Rational& c) { return c != 0; })->get_num() < 0)) {
        alpha = k.scale(alpha, -1);
        beta = k.scale(beta, -1);
      }
      out.rational = true;
      out.place = nu;
      out.alpha = alpha;
      out.beta = beta;
      out.status = rel.status;
      return out;
    }
    floor = std::min(floor, rel.residual_floor);
    all_proven = all_proven && rel.proven_none;
  }
  out.residual_floor = all_proven ? 0.0 : floor;
  return out;
}

KDirichletResult k_dirichlet(const NumberField& k, const RealOracle& theta, const FieldElement& eta,
                             const Config& config) {
  const std::size_t d = k.degree();
  if (eta.coords.size() != d) fail(ErrorCode::DimensionMismatch, "eta has the wrong degree");
  if (!eta.integral() || !a_positive(eta)) fail(ErrorCode::NotPositive, "eta must have positive integer coordinates");
  KDirichletResult out;
  out.irrationality = krational_test(k, theta, config.height, config);
  if (out.irrationality.rational)
    fail(ErrorCode::KRational, "theta is K-rational at place " + std::to_string(out.irrationality.place + 1) + ": (" +
                                   k.format(out.irrationality.alpha) + ") theta = " + k.format(out.irrationality.beta));
  IntVector n = integral_coords(eta, "eta");
  Integer total = 1;
  for (const auto& x : n) total *= x;
  if (total > Integer(std::to_string(config.enumeration_cap)))
    fail(ErrorCode::EnumerationCapExceeded,
         "[0, eta) has " + to_string(total) + " elements, above the cap " + std::to_string(config.enumeration_cap));
  out.eta_norm2 = a_norm2(eta);
  out.bound_norm2 = 0;
  for (const auto& x : n) out.bound_norm2 += Rational(1) / Rational(x * x);
  out.gamma = out.gamma_perp = out.beta_new = out.beta_old = k.zero();
  out.gamma_norm2 = 0;
  if (total == 1) {
    // eta = 1_A: [0, eta) = {0}, and (0, 0) meets both bounds.
    out.trivial = true;
    out.enumerated = 1;
    out.error_norm2 = PrecisionReal(Rational(0), config.precision);
    out.certified = true;
    return out;
  }
  // Per coordinate: floor(theta a) and the box floor(n_j frac(theta a)).
  std::vector<std::vector<long>> box(d);
  std::vector<IntVector> whole(d);
  for (std::size_t j = 0; j < d; ++j) {
    const long nj = n[j].get_si();
    for (long a = 0; a < nj; ++a) {
      bool decided = false;
      for (long bits = config.precision + 2 * bit_length(n[j]); bits <= config.precision_cap && !decided; bits *= 2) {
        PrecisionReal x = PrecisionReal(Rational(a), bits) * theta.eval(bits);
        Integer f = x.enclosure().floor_lo();
        if (f != x.enclosure().floor_hi()) continue;
        PrecisionReal frac = x - PrecisionReal(Rational(f), bits);
        PrecisionReal scaled = frac * PrecisionReal(Rational(n[j]), bits);
        Integer b = scaled.enclosure().floor_lo();
        if (b != scaled.enclosure().floor_hi()) continue;
        box[j].push_back(b.get_si());
        whole[j].push_back(f);
        decided = true;
      }
      if (!decided) fail(ErrorCode::PrecisionInsufficient, "box of a theta is undecided at the precision cap");
    }
  }
  // Boxes hold the index of the first element seen; the point 1 in each
  // coordinate with n_j > 1 stands in for beta = 0 with beta_perp_j = -1.
  std::map<std::vector<long>, std::vector<long>> seen;
  std::vector<long> top(d);
  for (std::size_t j = 0; j < d; ++j) top[j] = n[j].get_si() - 1;
  seen.emplace(top, std::vector<long>{});
  std::vector<long> a(d, 0);
  std::vector<long> key(d);
  std::optional<std::vector<long>> hit_old;
  std::size_t visited = 0;
  while (true) {
    ++visited;
    for (std::size_t j = 0; j < d; ++j) key[j] = box[j][a[j]];
    auto [it, inserted] = seen.emplace(key, a);
    if (!inserted) {
      hit_old = it->second;
      break;
    }
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++a[j] < n[j].get_si()) break;
      a[j] = 0;
      if (j == 0) fail(ErrorCode::SearchExhausted, "pigeonhole enumeration ended without a collision");
    }
  }
  out.enumerated = visited;
  for (std::size_t j = 0; j < d; ++j) {
    Integer perp_new = whole[j][a[j]];
    out.beta_new.coords[j] = a[j];
    if (hit_old->empty()) {
      out.collided_with_one_a = true;
      const Integer perp_old = n[j] > 1 ? Integer(-1) : Integer(0);
      out.gamma.coords[j] = a[j];
      out.gamma_perp.coords[j] = Rational(perp_new - perp_old);
    } else {
      const long b = (*hit_old)[j];
      out.beta_old.coords[j] = b;
      out.gamma.coords[j] = a[j] - b;
      out.gamma_perp.coords[j] = Rational(perp_new - whole[j][b]);
    }
  }
  out.gamma_norm2 = a_norm2(out.gamma);
  for (long bits = config.precision; bits <= config.precision_cap; bits *= 2) {
    PrecisionReal t = theta.eval(bits);
    PrecisionReal s(Rational(0), bits);
    for (std::size_t j = 0; j < d; ++j) {
      PrecisionReal e = PrecisionReal(out.gamma.coords[j], bits) * t - PrecisionReal(out.gamma_perp.coords[j], bits);
      s = s + e * e;
    }
    out.error_norm2 = s;
    out.certified = out.gamma_norm2 < out.eta_norm2 && s.enclosure().less_than(out.bound_norm2);
    if (out.certified) break;
  }
  return out;
}

dagroups::ApproxSequence trace_push(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                                    const Config& config) {
  OProfiles prof = o_error_profiles(k, theta, seq, config);
  dagroups::ApproxSequence out;
  IntVector duals;
  auto integral_trace = [&](const FieldElement& x) {
    Rational t = k.trace(x);
    if (t.get_den() != 1) fail(ErrorCode::InvalidArgument, "trace of a non-integral element");
    return Integer(t.get_num());
  };
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.entries.push_back(integral_trace(seq.entries[i]));
    duals.push_back(integral_trace(prof.duals[i]));
  }
  out.duals = std::move(duals);
  out.theta = theta.literal();
  out.provenance = dagroups::Provenance::Constructed;
  out.method = "trace(" + seq.method + ")";
  // |sum_nu eps_nu| <= d max_nu |eps_nu|.
  for (const auto& c : seq.certificates)
    if (c.theta == theta.literal()) out.certificates.push_back({c.theta, c.C * static_cast<double>(k.degree()), c.lambda});
  return out;
}

void check_automorphism(const NumberField& k, const RatMatrix& sigma) {
  const std::size_t d = k.degree();
  if (sigma.size() != d) fail(ErrorCode::NotAutomorphism, "automorphism needs one image per basis element");
  for (const auto& img : sigma)
    if (img.size() != d) fail(ErrorCode::NotAutomorphism, "automorphism image of the wrong degree");
  if (sigma[0] != unit(d, 0)) fail(ErrorCode::NotAutomorphism, "automorphism must fix 1");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      FieldElement lhs = k.apply(sigma, FieldElement{k.product(i, j)});
      FieldElement rhs = k.mul(FieldElement{sigma[i]}, FieldElement{sigma[j]});
      if (!(lhs == rhs))
        fail(ErrorCode::NotAutomorphism, "sigma(" + k.basis_names()[i] + " * " + k.basis_names()[j] +
                                             ") differs from the product of the images");
    }
  RatMatrix m(d, RatVector(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r][c] = sigma[c][r];
  if (rational_det(m) == 0) fail(ErrorCode::NotAutomorphism, "sigma is not invertible");
}

std::vector<std::size_t> place_permutation(const NumberField& k, const RatMatrix& sigma) {
  check_automorphism(k, sigma);
  const std::size_t d = k.degree();
  std::vector<std::size_t> map(d);
  std::vector<bool> used(d, false);
  for (std::size_t nu = 0; nu < d; ++nu) {
    std::optional<std::size_t> found;
    for (std::size_t mu = 0; mu < d && !found; ++mu) {
      bool all = true;
      for (std::size_t j = 0; j < d && all; ++j) {
        PrecisionReal lhs = k.embed(FieldElement{sigma[j]}, kCheckBits)[nu];
        PrecisionReal rhs = k.embedding(mu, j).eval(kCheckBits);
        all = !(lhs - rhs).certainly_nonzero();
      }
      if (all && !used[mu]) found = mu;
    }
    if (!found) fail(ErrorCode::NotAutomorphism, "no place matches the image of place " + std::to_string(nu + 1));
    used[*found] = true;
    map[nu] = *found;
  }
  return map;
}

GaloisResult galois_apply(const NumberField& k, const RatMatrix& sigma, const RealOracle& theta,
                          const OApproxSequence& seq, const Config& config) {
  GaloisResult out;
  out.place_map = place_permutation(k, sigma);
  std::vector<FieldElement> duals =
      seq.duals && seq.theta == theta.literal() ? *seq.duals : o_error_profiles(k, theta, seq, config).duals;
  OApproxSequence& s = out.sequence;
  for (std::size_t i = 0; i < seq.size(); ++i) s.entries.push_back(k.apply(sigma, seq.entries[i]));
  std::vector<FieldElement> image;
  for (const auto& x : duals) image.push_back(k.apply(sigma, x));
  s.duals = std::move(image);
  s.theta = theta.literal();
  s.method = "galois(" + seq.method + ")";
  // The max over places is invariant under a permutation of the places.
  s.certificates = seq.certificates;
  return out;
}

polyapprox::PolySequence conjugate_poly(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                                        const Config& config) {
  const std::size_t d = k.degree();
  OProfiles prof = o_error_profiles(k, theta, seq, config);
  std::vector<polyapprox::IntPolynomial> polys;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    RatMatrix ma = k.multiplication_matrix(seq.entries[i]);
    RatMatrix mb = k.multiplication_matrix(prof.duals[i]);
    // det(X M_alpha - M_perp) = prod_nu (nu(alpha) X - nu(alpha_perp)); sample X = 0..d.
    std::vector<Rational> values;
    for (std::size_t x = 0; x <= d; ++x) {
      RatMatrix m(d, RatVector(d));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m[r][c] = Rational(static_cast<long>(x)) * ma[r][c] - mb[r][c];
      values.push_back(rational_det(std::move(m)));
    }
    // Lagrange interpolation in the monomial basis.
    RatVector coeffs(d + 1, Rational(0));
    for (std::size_t a = 0; a <= d; ++a) {
      RatVector basis{Rational(1)};
      Rational denom = 1;
      for (std::size_t b = 0; b <= d; ++b) {
        if (b == a) continue;
        RatVector next(basis.size() + 1, Rational(0));
        for (std::size_t t = 0; t < basis.size(); ++t) {
          next[t + 1] += basis[t];
          next[t] -= Rational(static_cast<long>(b)) * basis[t];
        }
        basis = std::move(next);
        denom *= Rational(static_cast<long>(a) - static_cast<long>(b));
      }
      for (std::size_t t = 0; t < basis.size(); ++t) coeffs[t] += values[a] * basis[t] / denom;
    }
    IntVector ints;
    for (const auto& c : coeffs) {
      if (c.get_den() != 1)
        fail(ErrorCode::NonIntegralCoefficients, "conjugate product " + std::to_string(i + 1) + " has coefficient " +
                                                     to_string(c));
      ints.push_back(c.get_num());
    }
    polys.push_back(polyapprox::IntPolynomial::univariate(ints));
  }
  return polyapprox::PolySequence::of(std::move(polys), static_cast<unsigned>(d));
}

ClearedDenominator clear_denominator(const IntVector& minpoly) {
  if (minpoly.size() < 2 || minpoly.back() == 0) fail(ErrorCode::InvalidArgument, "minimal polynomial of degree >= 1 needed");
  Integer g = 0;
  for (const auto& c : minpoly) g = gcd(g, c);
  if (g != 1) fail(ErrorCode::InvalidArgument, "minimal polynomial must be primitive");
  IntVector f = minpoly;
  if (f.back() < 0)
    for (auto& c : f) c = -c;
  const std::size_t deg = f.size() - 1;
  ClearedDenominator out;
  out.a = f.back();
  // a^(d-1) f(y/a) = y^d + sum_{k<d} c_k a^(d-1-k) y^k.
  for (std::size_t k = 0; k < deg; ++k) out.monic.push_back(f[k] * ipow(out.a, deg - 1 - k));
  out.monic.push_back(1);
  return out;
}

ClearedDenominator clear_denominator(const RealOracle& alpha, const Config& config) {
  IntVector minpoly;
  if (auto q = alpha.as_rational()) {
    minpoly = {-q->get_num(), q->get_den()};
  } else if (auto s = alpha.surd_parts()) {
    // c x - a = b sqrt(d)  =>  c^2 x^2 - 2ac x + a^2 - b^2 d = 0.
    minpoly = {s->a * s->a - s->b * s->b * s->d, -2 * s->a * s->c, s->c * s->c};
  } else {
    unsigned dmax = config.degree;
    if (auto p = alpha.algebraic_parts()) dmax = static_cast<unsigned>(p->squarefree.degree());
    polyapprox::PolyCertificate cert = polyapprox::minimal_polynomial(alpha, dmax, config.height, config);
    if (!cert.found() || !cert.polynomial)
      fail(ErrorCode::InvalidArgument, "no minimal polynomial for " + alpha.literal() + " up to degree " +
                                           std::to_string(dmax));
    minpoly = cert.polynomial->univariate_coefficients();
  }
  Integer g = 0;
  for (const auto& c : minpoly) g = gcd(g, c);
  for (auto& c : minpoly) c /= g;
  ClearedDenominator out = clear_denominator(minpoly);
  out.integral = alpha.scaled(Rational(out.a));
  return out;
}

}  // namespace diophlab::numfield
