#include "diophlab/numeric/oracle.hpp"

#include <cctype>
#include <mutex>

#include "diophlab/core/error.hpp"

namespace diophlab {

struct OracleNode {
  OracleKind kind = OracleKind::Rational;
  Rational q;  // Rational value, Scale factor, Log argument
  Integer a, b, c, d;
  IntVector poly;
  QPoly sqfree;
  Rational lo, hi;
  int base = 10;
  bool negative = false;
  Integer digits_value;  // |value| * base^digit_count, truncated
  unsigned long digit_count = 0;
  unsigned long power = 0;
  std::vector<std::shared_ptr<const OracleNode>> kids;
  std::string literal;

  mutable std::mutex mu;
  mutable std::optional<Interval> cache;
  mutable Rational bracket_lo, bracket_hi;
  mutable int sign_lo = 0;

  static RealOracle wrap(std::shared_ptr<OracleNode> n) { return RealOracle(std::move(n)); }
  static const OracleNode& of(const RealOracle& o) { return *o.node_; }
  static std::shared_ptr<const OracleNode> ptr(const RealOracle& o) { return o.node_; }

  Interval compute(mpfr_prec_t w) const;
  Interval refine_algebraic(mpfr_prec_t w) const;
};

std::string_view exactness_name(Exactness e) {
  switch (e) {
    case Exactness::Rational: return "rational";
    case Exactness::QuadraticSurd: return "quadratic-surd";
    case Exactness::Algebraic: return "algebraic";
    case Exactness::SymbolicConstant: return "symbolic-constant";
    case Exactness::DigitStream: return "digit-stream";
    case Exactness::Composite: return "composite";
  }
  return "composite";
}

namespace {

constexpr long kGuardCapBits = 1L << 15;

std::shared_ptr<OracleNode> make(OracleKind kind) {
  auto n = std::make_shared<OracleNode>();
  n->kind = kind;
  return n;
}

RealOracle composite(OracleKind kind, std::vector<std::shared_ptr<const OracleNode>> kids,
                     std::string literal) {
  auto n = make(kind);
  n->kids = std::move(kids);
  n->literal = std::move(literal);
  return OracleNode::wrap(std::move(n));
}

}  // namespace

RealOracle::RealOracle() : RealOracle(rational(Rational(0))) {}

RealOracle RealOracle::rational(const Rational& q) {
  auto n = make(OracleKind::Rational);
  n->q = q;
  n->q.canonicalize();
  n->literal = to_string(n->q);
  return RealOracle(std::move(n));
}

RealOracle RealOracle::surd(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  if (c == 0) fail(ErrorCode::InvalidArgument, "surd with zero denominator");
  if (d < 0) fail(ErrorCode::InvalidArgument, "surd with negative radicand");
  if (b == 0 || d == 0) return rational(Rational(a, c));
  auto split = squarefree_split(d);
  Integer na = a, nb = b * split.square_root_part, nc = c, nd = split.squarefree_part;
  if (nd == 1) return rational(Rational(na + nb, nc));
  Integer g = gcd(gcd(na, nb), nc);
  na /= g;
  nb /= g;
  nc /= g;
  if (nc < 0) {
    na = -na;
    nb = -nb;
    nc = -nc;
  }
  auto n = make(OracleKind::Surd);
  n->a = na;
  n->b = nb;
  n->c = nc;
  n->d = nd;
  n->literal = "surd(" + to_string(na) + "," + to_string(nb) + "," + to_string(nc) + "," + to_string(nd) + ")";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::sqrt(const Rational& q) {
  if (q < 0) fail(ErrorCode::InvalidArgument, "square root of a negative rational");
  // sqrt(p/r) = sqrt(p*r)/r
  return surd(0, 1, q.get_den(), q.get_num() * q.get_den());
}

RealOracle RealOracle::algebraic(const IntVector& ascending, const Rational& lo, const Rational& hi) {
  QPoly p = QPoly::from_integers(ascending);
  if (p.degree() < 1) fail(ErrorCode::InvalidArgument, "algebraic oracle needs a nonconstant polynomial");
  if (lo > hi) fail(ErrorCode::InvalidArgument, "algebraic oracle bracket with lo > hi");
  QPoly s = p.squarefree();
  int roots = count_roots_closed(s, lo, hi);
  if (roots != 1)
    fail(ErrorCode::InvalidArgument,
         "bracket [" + to_string(lo) + "," + to_string(hi) + "] holds " + std::to_string(roots) + " roots");
  if (s.sign_at(lo) == 0) return rational(lo);
  if (s.sign_at(hi) == 0) return rational(hi);
  if (s.degree() == 1) return rational(-s.coeff(0) / s.coeff(1));
  auto n = make(OracleKind::Algebraic);
  n->poly = ascending;
  n->sqfree = s;
  n->lo = lo;
  n->hi = hi;
  n->bracket_lo = lo;
  n->bracket_hi = hi;
  n->sign_lo = s.sign_at(lo);
  std::string lit = "alg([";
  for (size_t i = 0; i < ascending.size(); ++i) {
    if (i) lit += ",";
    lit += to_string(ascending[i]);
  }
  lit += "];[" + to_string(lo) + "," + to_string(hi) + "])";
  n->literal = std::move(lit);
  return RealOracle(std::move(n));
}

RealOracle RealOracle::pi() {
  auto n = make(OracleKind::Pi);
  n->literal = "pi";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::euler() {
  auto n = make(OracleKind::Euler);
  n->literal = "e";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::log(const Rational& q) {
  if (q <= 0) fail(ErrorCode::InvalidArgument, "logarithm of a nonpositive rational");
  if (q == 1) return rational(0);
  auto n = make(OracleKind::Log);
  n->q = q;
  n->literal = "log(" + to_string(q) + ")";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::digits(int base, std::string_view text) {
  if (base < 2 || base > 36) fail(ErrorCode::InvalidArgument, "digit stream base must be in [2, 36]");
  auto n = make(OracleKind::Digits);
  n->base = base;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    n->negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Integer value = 0;
  bool seen_point = false, seen_digit = false;
  for (char ch : body) {
    if (ch == '.') {
      if (seen_point) fail(ErrorCode::Parse, "digit stream with two radix points");
      seen_point = true;
      continue;
    }
    int v = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0'
            : std::isalpha(static_cast<unsigned char>(ch))
                ? std::tolower(static_cast<unsigned char>(ch)) - 'a' + 10
                : 99;
    if (v >= base) fail(ErrorCode::Parse, "invalid digit in stream: '" + std::string(text) + "'");
    value = value * base + v;
    seen_digit = true;
    if (seen_point) ++n->digit_count;
  }
  if (!seen_digit) fail(ErrorCode::Parse, "empty digit stream");
  n->digits_value = value;
  n->literal = "digits(" + std::to_string(base) + ";" + std::string(text) + ")";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::operator-() const { return scaled(-1); }

RealOracle operator+(const RealOracle& x, const RealOracle& y) {
  auto qx = x.as_rational(), qy = y.as_rational();
  if (qx && qy) return RealOracle::rational(*qx + *qy);
  if (qx && *qx == 0) return y;
  if (qy && *qy == 0) return x;
  auto sx = x.surd_parts(), sy = y.surd_parts();
  if ((sx || qx) && (sy || qy)) {
    // Bring both to (a + b sqrt d)/c over a common d.
    auto parts = [](const std::optional<RealOracle::SurdParts>& s, const std::optional<Rational>& q,
                    const Integer& d) {
      if (s) return *s;
      return RealOracle::SurdParts{q->get_num(), 0, q->get_den(), d};
    };
    Integer d = sx ? sx->d : sy->d;
    if (!(sx && sy && sx->d != sy->d)) {
      auto px = parts(sx, qx, d), py = parts(sy, qy, d);
      return RealOracle::surd(px.a * py.c + py.a * px.c, px.b * py.c + py.b * px.c, px.c * py.c, d);
    }
  }
  return composite(OracleKind::Sum, {OracleNode::ptr(x), OracleNode::ptr(y)},
                   "add(" + x.literal() + "," + y.literal() + ")");
}

RealOracle operator-(const RealOracle& x, const RealOracle& y) { return x + (-y); }

RealOracle operator*(const RealOracle& x, const RealOracle& y) {
  auto qx = x.as_rational(), qy = y.as_rational();
  if (qx) return y.scaled(*qx);
  if (qy) return x.scaled(*qy);
  auto sx = x.surd_parts(), sy = y.surd_parts();
  if (sx && sy && sx->d == sy->d) {
    return RealOracle::surd(sx->a * sy->a + sx->b * sy->b * sx->d, sx->a * sy->b + sx->b * sy->a, sx->c * sy->c,
                            sx->d);
  }
  return composite(OracleKind::Product, {OracleNode::ptr(x), OracleNode::ptr(y)},
                   "mul(" + x.literal() + "," + y.literal() + ")");
}

RealOracle operator/(const RealOracle& x, const RealOracle& y) { return x * y.reciprocal(); }

RealOracle RealOracle::scaled(const Rational& q) const {
  if (q == 1) return *this;
  if (q == 0) return rational(0);
  if (auto r = as_rational()) return rational(*r * q);
  if (auto s = surd_parts()) return surd(s->a * q.get_num(), s->b * q.get_num(), s->c * q.get_den(), s->d);
  const OracleNode& self = OracleNode::of(*this);
  if (self.kind == OracleKind::Scale) return RealOracle(self.kids[0]).scaled(self.q * q);
  auto n = make(OracleKind::Scale);
  n->q = q;
  n->kids = {node_};
  n->literal = "scale(" + to_string(q) + "," + literal() + ")";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::reciprocal() const {
  if (auto r = as_rational()) {
    if (*r == 0) fail(ErrorCode::InvalidArgument, "reciprocal of zero");
    return rational(1 / *r);
  }
  if (auto s = surd_parts()) {
    // c/(a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
    Integer den = s->a * s->a - s->b * s->b * s->d;
    return surd(s->c * s->a, -s->c * s->b, den, s->d);
  }
  const OracleNode& self = OracleNode::of(*this);
  if (self.kind == OracleKind::Reciprocal) return RealOracle(self.kids[0]);
  if (self.kind == OracleKind::Scale) return RealOracle(self.kids[0]).reciprocal().scaled(1 / self.q);
  return composite(OracleKind::Reciprocal, {node_}, "inv(" + literal() + ")");
}

RealOracle RealOracle::pow(unsigned long k) const {
  if (k == 0) return rational(1);
  if (k == 1) return *this;
  if (as_rational() || surd_parts()) {
    RealOracle acc = rational(1), base = *this;
    unsigned long e = k;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }
  auto n = make(OracleKind::Power);
  n->power = k;
  n->kids = {node_};
  n->literal = "pow(" + literal() + "," + std::to_string(k) + ")";
  return RealOracle(std::move(n));
}

RealOracle RealOracle::exp() const {
  if (auto r = as_rational(); r && *r == 0) return rational(1);
  if (auto arg = log_argument()) return rational(*arg);
  return composite(OracleKind::Exp, {node_}, "exp(" + literal() + ")");
}

OracleKind RealOracle::kind() const { return node_->kind; }

Exactness RealOracle::exactness() const {
  switch (node_->kind) {
    case OracleKind::Rational: return Exactness::Rational;
    case OracleKind::Surd: return Exactness::QuadraticSurd;
    case OracleKind::Algebraic: return Exactness::Algebraic;
    case OracleKind::Pi:
    case OracleKind::Euler:
    case OracleKind::Log: return Exactness::SymbolicConstant;
    case OracleKind::Digits: return Exactness::DigitStream;
    default: return Exactness::Composite;
  }
}

const std::string& RealOracle::literal() const { return node_->literal; }

std::optional<Rational> RealOracle::as_rational() const {
  if (node_->kind == OracleKind::Rational) return node_->q;
  return std::nullopt;
}

std::optional<RealOracle::SurdParts> RealOracle::surd_parts() const {
  if (node_->kind != OracleKind::Surd) return std::nullopt;
  return SurdParts{node_->a, node_->b, node_->c, node_->d};
}

std::optional<RealOracle::AlgebraicParts> RealOracle::algebraic_parts() const {
  if (node_->kind != OracleKind::Algebraic) return std::nullopt;
  return AlgebraicParts{node_->poly, node_->lo, node_->hi, node_->sqfree};
}

std::optional<Rational> RealOracle::log_argument() const {
  if (node_->kind != OracleKind::Log) return std::nullopt;
  return node_->q;
}

std::optional<Rational> RealOracle::scale_factor() const {
  if (node_->kind != OracleKind::Scale) return std::nullopt;
  return node_->q;
}

std::optional<unsigned long> RealOracle::power_exponent() const {
  if (node_->kind != OracleKind::Power) return std::nullopt;
  return node_->power;
}

std::vector<RealOracle> RealOracle::children() const {
  std::vector<RealOracle> out;
  for (const auto& k : node_->kids) out.push_back(RealOracle(k));
  return out;
}

Interval OracleNode::refine_algebraic(mpfr_prec_t w) const {
  Rational target = pow2_neg(static_cast<long>(w));
  while (bracket_hi - bracket_lo > target) {
    Rational mid = (bracket_lo + bracket_hi) / 2;
    int s = sqfree.sign_at(mid);
    if (s == 0) {
      bracket_lo = bracket_hi = mid;
      break;
    }
    if (s == sign_lo) {
      bracket_lo = mid;
    } else {
      bracket_hi = mid;
    }
  }
  return Interval(bracket_lo, bracket_hi, w);
}

Interval OracleNode::compute(mpfr_prec_t w) const {
  auto child = [w](const std::shared_ptr<const OracleNode>& k) {
    return RealOracle(k).eval(static_cast<long>(w)).enclosure().with_precision(w);
  };
  switch (kind) {
    case OracleKind::Rational:
      return Interval(q, w);
    case OracleKind::Surd: {
      Interval root = Interval(Rational(d), w).sqrt();
      return (Interval(Rational(a), w) + Interval(Rational(b), w) * root) / Interval(Rational(c), w);
    }
    case OracleKind::Algebraic:
      return refine_algebraic(w);
    case OracleKind::Pi:
      return Interval::pi(w);
    case OracleKind::Euler:
      return Interval::euler(w);
    case OracleKind::Log:
      return Interval(q, w).log();
    case OracleKind::Digits: {
      Rational scale(ipow(base, digit_count));
      Rational v(digits_value, ipow(base, digit_count));
      v.canonicalize();
      Rational ulp = 1 / scale;
      return negative ? Interval(Rational(-v - ulp), Rational(-v), w) : Interval(v, Rational(v + ulp), w);
    }
    case OracleKind::Sum:
      return child(kids[0]) + child(kids[1]);
    case OracleKind::Product:
      return child(kids[0]) * child(kids[1]);
    case OracleKind::Scale:
      return Interval(q, w) * child(kids[0]);
    case OracleKind::Reciprocal:
      return Interval(Rational(1), w) / child(kids[0]);
    case OracleKind::Power:
      return child(kids[0]).pow(power);
    case OracleKind::Exp:
      return child(kids[0]).exp();
  }
  fail(ErrorCode::InvalidArgument, "unknown oracle kind");
}

PrecisionReal RealOracle::eval(long bits) const {
  if (bits < 2) bits = 2;
  const OracleNode& n = *node_;
  if (n.kind == OracleKind::Rational) return PrecisionReal(n.q, bits + 2);
  if (n.kind == OracleKind::Digits) {
    // ulp = base^-digit_count must not exceed 2^-bits
    if (Rational(1, ipow(n.base, n.digit_count)) > pow2_neg(bits))
      fail(ErrorCode::UnevaluatableDigitStream,
           literal() + " carries too few digits for " + std::to_string(bits) + " bits");
  }
  std::lock_guard<std::mutex> lock(n.mu);
  if (n.cache && n.cache->width_within(bits)) {
    if (n.kind == OracleKind::Algebraic && n.bracket_lo == n.bracket_hi)
      return PrecisionReal(n.bracket_lo, n.cache->precision());
    return PrecisionReal(*n.cache);
  }
  long guard = 32;
  for (;;) {
    mpfr_prec_t w = bits + guard;
    Interval got = n.compute(w);
    if (n.cache) got = Interval::intersect(*n.cache, got);
    n.cache = got;
    if (n.kind == OracleKind::Algebraic && n.bracket_lo == n.bracket_hi)
      return PrecisionReal(n.bracket_lo, w);
    if (got.width_within(bits)) return PrecisionReal(got);
    guard *= 2;
    if (guard > kGuardCapBits)
      fail(ErrorCode::PrecisionInsufficient, "could not enclose " + literal() + " to " + std::to_string(bits) + " bits");
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  RealOracle parse_all() {
    RealOracle o = expr();
    skip();
    if (pos_ != s_.size()) error("trailing characters");
    return o;
  }

 private:
  [[noreturn]] void error(const std::string& why) {
    fail(ErrorCode::Parse, "cannot parse oracle literal '" + s_ + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // Number token: sign, digits, optional '.digits' or '/digits'.
  std::string number_token() {
    skip();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/'))
      ++pos_;
    if (start == pos_) error("expected a number");
    return s_.substr(start, pos_ - start);
  }

  Rational number() { return parse_rational(number_token()); }
  Integer integer() { return parse_integer(number_token()); }

  RealOracle expr() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+') return RealOracle::rational(number());
    if (c == '-') {
      if (pos_ + 1 < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '.'))
        return RealOracle::rational(number());
      ++pos_;
      return -expr();
    }
    std::string name = ident();
    if (name.empty()) error("unexpected character");
    if (name == "pi") return RealOracle::pi();
    if (name == "e") return RealOracle::euler();
    if (name == "phi") return RealOracle::surd(1, 1, 2, 5);
    expect('(');
    RealOracle out;
    if (name == "log") {
      out = RealOracle::log(number());
    } else if (name == "sqrt") {
      out = RealOracle::sqrt(number());
    } else if (name == "surd") {
      Integer a = integer();
      expect(',');
      Integer b = integer();
      expect(',');
      Integer cc = integer();
      expect(',');
      Integer d = integer();
      out = RealOracle::surd(a, b, cc, d);
    } else if (name == "alg") {
      expect('[');
      IntVector coeffs{integer()};
      while (peek(',')) {
        ++pos_;
        coeffs.push_back(integer());
      }
      expect(']');
      expect(';');
      expect('[');
      Rational lo = number();
      expect(',');
      Rational hi = number();
      expect(']');
      out = RealOracle::algebraic(coeffs, lo, hi);
    } else if (name == "digits") {
      Integer base = integer();
      expect(';');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
      std::string body = s_.substr(start, pos_ - start);
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
      out = RealOracle::digits(static_cast<int>(base.get_si()), body);
    } else if (name == "exp") {
      out = expr().exp();
    } else if (name == "inv") {
      out = expr().reciprocal();
    } else if (name == "neg") {
      out = -expr();
    } else if (name == "add" || name == "sub" || name == "mul" || name == "div") {
      RealOracle x = expr();
      expect(',');
      RealOracle y = expr();
      out = name == "add" ? x + y : name == "sub" ? x - y : name == "mul" ? x * y : x / y;
    } else if (name == "scale") {
      Rational q = number();
      expect(',');
      out = expr().scaled(q);
    } else if (name == "pow") {
      RealOracle x = expr();
      expect(',');
      Integer k = integer();
      if (k < 0) error("negative power");
      out = x.pow(k.get_ui());
    } else {
      error("unknown function '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string s_;
  size_t pos_ = 0;
};

std::string normalize_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

}  // namespace

RealOracle RealOracle::parse(std::string_view literal) { return Parser(normalize_minus(literal)).parse_all(); }

OracleVector parse_oracle_list(const std::vector<std::string>& literals) {
  OracleVector out;
  out.reserve(literals.size());
  for (const auto& l : literals) out.push_back(RealOracle::parse(l));
  return out;
}

OracleMatrix parse_oracle_matrix(std::string_view raw) {
  std::string text = strip(normalize_minus(raw));
  std::vector<std::string> rows;
  if (text.size() >= 2 && text.front() == '[' && text[1] != ']' && strip(text.substr(1)).front() == '[') {
    if (text.back() != ']') fail(ErrorCode::Parse, "unbalanced matrix literal");
    for (auto& r : split_top_level(text.substr(1, text.size() - 2), ',')) {
      r = strip(r);
      if (r.size() < 2 || r.front() != '[' || r.back() != ']') fail(ErrorCode::Parse, "matrix row must be [..]");
      rows.push_back(r.substr(1, r.size() - 2));
    }
  } else {
    rows = split_top_level(text, ';');
  }
  OracleMatrix m;
  for (const auto& r : rows) {
    OracleVector row;
    for (const auto& e : split_top_level(r, ',')) row.push_back(RealOracle::parse(strip(e)));
    m.push_back(std::move(row));
  }
  if (m.empty() || m.front().empty()) fail(ErrorCode::Parse, "empty matrix");
  for (const auto& row : m)
    if (row.size() != m.front().size()) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
  return m;
}

}  // namespace diophlab
