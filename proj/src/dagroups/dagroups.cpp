#include "diophlab/dagroups/dagroups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "diophlab/core/error.hpp"

namespace diophlab::dagroups {

namespace {

long bit_length(const Integer& z) { return z == 0 ? 1 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

long max_bits(const IntVector& v) {
  long b = 1;
  for (const auto& z : v) b = std::max(b, bit_length(z));
  return b;
}

// log2 of the upper end of |x|; -inf for an exact zero.
double log2_abs_hi(const PrecisionReal& x) {
  if (x.certainly_zero()) return -std::numeric_limits<double>::infinity();
  Interval a = x.enclosure().abs();
  if (mpfr_zero_p(a.hi().get())) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, a.hi().get(), MPFR_RNDU);
  return static_cast<double>(e) + std::log2(m);
}

double log2_abs_mid(const PrecisionReal& x) {
  Interval a = x.enclosure().abs();
  BigFloat mid(a.precision());
  mpfr_add(mid.get(), a.lo().get(), a.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  long e = 0;
  double m = mpfr_get_d_2exp(&e, mid.get(), MPFR_RNDN);
  return static_cast<double>(e) + std::log2(m);
}

// Upper envelope exponent max_i (y_i + lambda i) over nonzero terms.
double envelope_log2(const std::vector<PrecisionReal>& eps, double lambda) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double y = log2_abs_hi(eps[i]);
    if (std::isfinite(y)) best = std::max(best, y + lambda * static_cast<double>(i + 1));
  }
  return best;
}

struct Line {
  double slope = 0, intercept = 0, r2 = 0;
};

Line least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Line l;
  l.slope = sxx > 0 ? sxy / sxx : 0;
  l.intercept = my - l.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (l.intercept + l.slope * xs[i]);
    ss_res += r * r;
  }
  l.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return l;
}

// Certificate over plain bounds b_i (1-based), as an upper envelope.
}  // namespace

DecayCertificate certificate_from_bounds(const std::string& theta, const std::vector<double>& log2_bounds) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < log2_bounds.size(); ++i) xs.push_back(static_cast<double>(i + 1));
  Line l = least_squares(xs, log2_bounds);
  double lambda = std::max(0.0, -l.slope);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < log2_bounds.size(); ++i)
    top = std::max(top, log2_bounds[i] + lambda * static_cast<double>(i + 1));
  // Slack absorbs double rounding in the log domain.
  return {theta, std::exp2(top + 1e-9), lambda};
}

bool certificate_holds(const DecayCertificate& c, const std::vector<PrecisionReal>& eps) {
  if (!(c.C > 0)) return false;
  const double log_c = std::log2(c.C);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double y = log2_abs_hi(eps[i]);
    if (std::isfinite(y) && y > log_c - c.lambda * static_cast<double>(i + 1) + 1e-9) return false;
  }
  return true;
}

namespace {

double log2_of(const Rational& q) {
  long ne = 0, de = 0;
  double nm = mpz_get_d_2exp(&ne, q.get_num_mpz_t());
  double dm = mpz_get_d_2exp(&de, q.get_den_mpz_t());
  return std::log2(std::fabs(nm)) - std::log2(dm) + static_cast<double>(ne - de);
}

// n_i * theta / step for every entry, with the enclosure narrow enough to round.
std::vector<PrecisionReal> scaled_products(const RealOracle& theta, const IntVector& entries, const Rational& step,
                                           const Config& config) {
  const long extra = max_bits(entries) + 16;
  for (long bits = config.precision;; bits *= 2) {
    PrecisionReal t = theta.eval(bits + extra);
    const mpfr_prec_t prec = t.precision();
    PrecisionReal inv_step(Rational(1 / step), prec);
    std::vector<PrecisionReal> out;
    bool narrow = true;
    for (const auto& n : entries) {
      PrecisionReal x = PrecisionReal(Rational(n), prec) * t * inv_step;
      if (!x.is_point() && !x.enclosure().width_within(bits / 2)) narrow = false;
      out.push_back(std::move(x));
    }
    if (narrow || bits * 2 > config.precision_cap) return out;
  }
}

}  // namespace

const DecayCertificate* ApproxSequence::certificate_for(const std::string& theta_literal) const {
  for (const auto& c : certificates)
    if (c.theta == theta_literal) return &c;
  return nullptr;
}

ApproxSequence user_sequence(IntVector entries) {
  if (entries.empty()) fail(ErrorCode::InvalidArgument, "sequence must be nonempty");
  ApproxSequence s;
  s.entries = std::move(entries);
  return s;
}

ApproxSequence parse_sequence(const std::string& json_array) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_array);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("sequence is not JSON: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorCode::Parse, "sequence must be a JSON array");
  IntVector v;
  for (const auto& x : j) {
    if (x.is_string()) v.push_back(parse_integer(x.get<std::string>()));
    else if (x.is_number_integer()) v.push_back(parse_integer(x.dump()));
    else fail(ErrorCode::Parse, "sequence entries must be integers or decimal strings");
  }
  return user_sequence(std::move(v));
}

Rational NumeratorConstraint::dual_step() const {
  switch (kind) {
    case Kind::InvertedScale: return Rational(1) / Rational(n);
    case Kind::DivisibleByAll: {
      Integer l = 1;
      for (Integer m = 2; m <= n; ++m) l = lcm(l, m);
      return Rational(l);
    }
    default: return Rational(1);
  }
}

Integer NumeratorConstraint::entry_step() const { return kind == Kind::ScaledIdeal ? n : Integer(1); }

std::string NumeratorConstraint::describe() const {
  switch (kind) {
    case Kind::Integers: return "Integers";
    case Kind::InvertedScale: return "InvertedScale(" + to_string(n) + ")";
    case Kind::DivisibleByAll: return "DivisibleByAll(" + to_string(n) + ")";
    case Kind::ScaledIdeal: return "ScaledIdeal(" + to_string(n) + ")";
  }
  return "?";
}

std::string_view status_name(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::CertifiedMember: return "CertifiedMember";
    case MembershipStatus::EmpiricalMember: return "EmpiricalMember";
    case MembershipStatus::NotMember: return "NotMember";
  }
  return "?";
}

ContinuedFraction convergents(const RealOracle& theta, std::size_t k, const Config& config) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "convergent count must be at least 1");
  return continued_fraction(theta, k, config.precision, std::max<long>(config.precision_cap, 1 << 14));
}

ApproxSequence convergent_sequence(const RealOracle& theta, std::size_t n, const Config& config) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "sequence length must be at least 1");
  ContinuedFraction cf = convergents(theta, n + 1, config);
  if (cf.convergents.size() < n + 1) fail(ErrorCode::RationalTheta, "continued fraction terminates before " + std::to_string(n + 1) + " terms");
  ApproxSequence s;
  IntVector duals;
  std::vector<double> bounds;
  for (std::size_t i = 0; i < n; ++i) {
    s.entries.push_back(cf.convergents[i].second);
    duals.push_back(cf.convergents[i].first);
    bounds.push_back(-log2_of(Rational(cf.convergents[i + 1].second)));
  }
  s.duals = std::move(duals);
  s.theta = theta.literal();
  s.provenance = Provenance::Constructed;
  s.method = "convergents";
  s.certificates.push_back(certificate_from_bounds(theta.literal(), bounds));
  return s;
}

std::optional<DecayFit> fit_decay(const std::vector<PrecisionReal>& eps, const Config& config) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i].contains_zero()) continue;
    xs.push_back(static_cast<double>(i + 1));
    ys.push_back(log2_abs_mid(eps[i]));
  }
  if (xs.size() < 3) return std::nullopt;
  Line l = least_squares(xs, ys);
  double lambda = -l.slope;
  if (!(lambda >= config.lambda_min) || !(l.r2 >= config.r2_min)) return std::nullopt;
  return DecayFit{std::exp2(envelope_log2(eps, lambda) + 1e-9), lambda, l.r2};
}

ErrorProfile error_term(const RealOracle& theta, const ApproxSequence& seq, const Rational& dual_step,
                        const Config& config) {
  if (seq.entries.empty()) fail(ErrorCode::InvalidArgument, "sequence must be nonempty");
  if (dual_step <= 0) fail(ErrorCode::NotPositive, "dual step must be positive");
  ErrorProfile out;
  const bool bound = dual_step == 1 && seq.duals && seq.theta && *seq.theta == theta.literal() &&
                     seq.duals->size() == seq.entries.size();
  if (bound) {
    const long extra = max_bits(seq.entries) + 16;
    PrecisionReal t = theta.eval(config.precision + extra);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      PrecisionReal x = PrecisionReal(Rational(seq.entries[i]), t.precision()) * t;
      out.epsilons.push_back(x - PrecisionReal(Rational((*seq.duals)[i]), t.precision()));
      out.duals.push_back(Rational((*seq.duals)[i]));
    }
  } else {
    long bits = config.precision;
    for (std::size_t attempt = 0;; ++attempt) {
      Config c = config;
      c.precision = bits;
      std::vector<PrecisionReal> xs = scaled_products(theta, seq.entries, dual_step, c);
      out.epsilons.clear();
      out.duals.clear();
      try {
        PrecisionReal step(dual_step, xs.front().precision());
        for (const auto& x : xs) {
          NearestInteger r = nearest_integer(x);
          out.duals.push_back(dual_step * Rational(r.n));
          out.epsilons.push_back(r.residual * step);
        }
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionInsufficient || bits * 2 > config.precision_cap) throw;
        bits *= 2;
      }
    }
  }
  out.fit = fit_decay(out.epsilons, config);
  return out;
}

ErrorProfile error_term(const RealOracle& theta, const ApproxSequence& seq, const Config& config) {
  return error_term(theta, seq, Rational(1), config);
}

MembershipVerdict membership(const RealOracle& theta, const ApproxSequence& seq,
                             const NumeratorConstraint& constraint, double tau, const Config& config) {
  if (!(tau > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (constraint.n < 1) fail(ErrorCode::NotPositive, "constraint parameter must be positive");
  if (tau < std::ldexp(1.0, -static_cast<int>(std::min<long>(config.precision_cap, 1000) - 16)))
    fail(ErrorCode::PrecisionInsufficient, "tolerance below achievable interval resolution");
  MembershipVerdict v;
  v.tau = tau;
  v.constraint = constraint;

  const Integer r = constraint.entry_step();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.entries[i] % r != 0) {
      v.witness = i + 1;
      v.reason = "entry " + to_string(seq.entries[i]) + " outside " + to_string(r) + "Z";
      return v;
    }
  }

  ErrorProfile prof = error_term(theta, seq, constraint.dual_step(), config);
  auto member = [&](MembershipStatus s, double lambda, std::string reason) {
    v.status = s;
    v.lambda = lambda;
    v.duals = prof.duals;
    v.reason = std::move(reason);
    return v;
  };

  if (theta.is_rational()) {
    for (std::size_t i = 0; i < prof.epsilons.size(); ++i) {
      if (!prof.epsilons[i].certainly_zero()) {
        v.witness = i + 1;
        v.reason = "exact error " + prof.epsilons[i].to_string(12) + " is nonzero";
        return v;
      }
    }
    return member(MembershipStatus::CertifiedMember, 0, "exact rational law");
  }
  const DecayCertificate* cert =
      constraint.kind == NumeratorConstraint::Kind::Integers ? seq.certificate_for(theta.literal()) : nullptr;
  MembershipVerdict c = classify_errors(prof.epsilons, cert, tau, config);
  if (!c.member()) {
    v.witness = c.witness;
    v.reason = c.reason;
    return v;
  }
  return member(c.status, c.lambda, c.reason == "construction certificate" ? c.reason + " " + seq.method : c.reason);
}

MembershipVerdict classify_errors(const std::vector<PrecisionReal>& eps, const DecayCertificate* certificate,
                                  double tau, const Config& config) {
  if (!(tau > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  MembershipVerdict v;
  v.tau = tau;
  const Rational tau_q(tau);
  auto member = [&](MembershipStatus s, double lambda, std::string reason) {
    v.status = s;
    v.lambda = lambda;
    v.reason = std::move(reason);
    return v;
  };
  if (eps.empty()) fail(ErrorCode::InvalidArgument, "error profile must be nonempty");
  if (std::all_of(eps.begin(), eps.end(), [](const PrecisionReal& e) { return e.certainly_zero(); }))
    return member(MembershipStatus::CertifiedMember, 0, "errors vanish exactly");
  if (certificate && certificate_holds(*certificate, eps))
    return member(MembershipStatus::CertifiedMember, certificate->lambda, "construction certificate");
  auto fit = fit_decay(eps, config);
  if (fit && eps.back().abs_less_than(tau_q)) return member(MembershipStatus::EmpiricalMember, fit->lambda, "decay fit");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i].abs_greater_than(tau_q)) {
      v.witness = i + 1;
      v.reason = "|eps_" + std::to_string(i + 1) + "| = " + eps[i].abs().to_string(12) + " > tau";
      return v;
    }
  }
  return member(MembershipStatus::EmpiricalMember, fit ? fit->lambda : 0.0, "all errors within tau");
}

ApproxSequence combine(const ApproxSequence& a, const ApproxSequence& b, const Integer& c1, const Integer& c2) {
  if (a.size() != b.size())
    fail(ErrorCode::LengthMismatch, "lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  if (a.theta && b.theta && *a.theta != *b.theta) fail(ErrorCode::InvalidArgument, "sequences bound to different numbers");
  ApproxSequence s;
  for (std::size_t i = 0; i < a.size(); ++i) s.entries.push_back(c1 * a.entries[i] + c2 * b.entries[i]);
  if (a.duals && b.duals && a.theta && b.theta) {
    IntVector d;
    for (std::size_t i = 0; i < a.size(); ++i) d.push_back(c1 * (*a.duals)[i] + c2 * (*b.duals)[i]);
    s.duals = std::move(d);
    s.theta = a.theta;
  }
  // |c1 e_a + c2 e_b| <= (|c1| C_a + |c2| C_b) 2^(-min(lambda) i).
  for (const auto& ca : a.certificates) {
    const DecayCertificate* cb = b.certificate_for(ca.theta);
    if (!cb) continue;
    double C = std::fabs(c1.get_d()) * ca.C + std::fabs(c2.get_d()) * cb->C;
    if (C == 0) continue;
    s.certificates.push_back({ca.theta, C * (1 + 1e-12), std::min(ca.lambda, cb->lambda)});
  }
  s.provenance = (a.provenance == Provenance::Constructed && b.provenance == Provenance::Constructed)
                     ? Provenance::Constructed
                     : Provenance::UserSupplied;
  s.method = "combine";
  return s;
}

ApproxSequence dual(const RealOracle& theta, const ApproxSequence& seq, const Config& config) {
  PrecisionReal t = theta.eval(config.precision);
  for (long bits = config.precision * 2; t.contains_zero() && !t.certainly_zero() && bits <= config.precision_cap;
       bits *= 2)
    t = theta.eval(bits);
  if (t.contains_zero()) fail(ErrorCode::ZeroTheta, "theta is zero or its sign is not certified");
  ErrorProfile prof = error_term(theta, seq, config);
  const RealOracle inv = theta.reciprocal();
  ApproxSequence out;
  IntVector entries;
  for (const auto& d : prof.duals) entries.push_back(d.get_num());
  out.entries = std::move(entries);
  out.duals = seq.entries;
  out.theta = inv.literal();
  out.provenance = seq.provenance;
  out.method = seq.method.empty() ? "dual" : seq.method;
  // eps' = -eps / theta, so C' = C / |theta|.
  Rational abs_lo = t.enclosure().abs().lo_rational();
  for (const auto& c : seq.certificates) {
    if (c.theta != theta.literal()) continue;
    out.certificates.push_back({inv.literal(), c.C / abs_lo.get_d() * (1 + 1e-12), c.lambda});
  }
  return out;
}

std::vector<Integer> scaling_witness(const RealOracle& theta, const ApproxSequence& seq, const Config& config) {
  if (theta.is_rational()) fail(ErrorCode::RationalTheta, "theta is rational");
  ErrorProfile prof = error_term(theta, seq, config);
  const Rational quarter(1, 4);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < prof.epsilons.size(); ++i) {
    const PrecisionReal& e = prof.epsilons[i];
    if (e.certainly_zero())
      fail(ErrorCode::WitnessNotFound, "index " + std::to_string(i + 1) + " has exactly zero error");
    const double mid = e.mid_double();
    bool found = false;
    // ||N n theta|| = ||N eps|| since N n_perp is an integer.
    for (unsigned long N = 1; N <= config.witness_bound; ++N) {
      double approx = std::fabs(static_cast<double>(N) * mid);
      approx = std::fabs(approx - std::nearbyint(approx));
      if (approx < 0.25 - 1e-6) continue;
      PrecisionReal scaled = PrecisionReal(Rational(N), e.precision()) * e;
      if (distance_to_integer(scaled).enclosure().greater_than(quarter)) {
        out.push_back(Integer(N));
        found = true;
        break;
      }
    }
    if (!found) {
      std::string detail;
      if (e.certainly_nonzero()) {
        double need = std::floor(0.25 / std::fabs(mid)) + 1;
        detail = "; ||N eps|| first exceeds 1/4 near N = " + std::to_string(static_cast<unsigned long long>(need));
      }
      fail(ErrorCode::WitnessNotFound, "no N <= " + std::to_string(config.witness_bound) + " at index " +
                                           std::to_string(i + 1) + detail);
    }
  }
  return out;
}

StdEstimate circle_part(const RealOracle& theta, const ApproxSequence& seq, const Config& config) {
  if (seq.entries.empty()) fail(ErrorCode::InvalidArgument, "sequence must be nonempty");
  std::vector<PrecisionReal> xs = scaled_products(theta, seq.entries, Rational(1), config);
  return std_estimate(xs, StdPolicy{config.rho, config.cluster_radius, StdMode::Circle});
}

std::optional<InhomogeneousSolution> inhomogeneous_approx(const RealOracle& theta, const RealOracle& target,
                                                          const Rational& delta, const ContinuedFraction& cf,
                                                          const Config& config, std::size_t first) {
  // With theta = p/q + e, |e| < 1/(q q'), pick n p = round(t q) mod q:
  // |n theta - t - k| < 1/(2q) + 1/q' <= 3/(2q) < delta.
  const Rational need = Rational(3, 2) / delta;
  for (std::size_t idx = first; idx < cf.convergents.size(); ++idx) {
    const auto& [p, q] = cf.convergents[idx];
    if (Rational(q) <= need) continue;
    const long bits = std::max<long>(config.precision, 4 * bit_length(q) + 64);
    PrecisionReal t = theta.eval(bits);
    PrecisionReal tgt = target.eval(bits);
    Integer b = nearest_integer(tgt * PrecisionReal(Rational(q), t.precision())).n;
    Integer inv;
    if (q != 1 && mpz_invert(inv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t()) == 0) continue;
    Integer n = 0;
    if (q != 1) {
      n = Integer(b * inv) % q;
      if (n < 0) n += q;
    }
    PrecisionReal diff = PrecisionReal(Rational(n), t.precision()) * t - tgt;
    NearestInteger near = nearest_integer(diff);
    PrecisionReal dist = (diff - PrecisionReal(Rational(near.n), t.precision())).abs();
    if (!dist.enclosure().less_than(delta)) continue;
    return InhomogeneousSolution{n, near.n, dist};
  }
  return std::nullopt;
}

HatElement hat_element(const RealOracle& theta, unsigned stages, const Config& config) {
  if (theta.is_rational()) fail(ErrorCode::RationalTheta, "hat element requires irrational theta");
  if (stages < 1 || stages > config.hat_stages)
    fail(ErrorCode::InvalidArgument, "stage count must lie in 1.." + std::to_string(config.hat_stages));
  HatElement out;
  const std::size_t cf_terms = 400;
  ContinuedFraction cf;
  try {
    cf = convergents(theta, cf_terms, config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionInsufficient) throw;
    cf = convergents(theta, 60, config);
  }
  IntVector entries, duals;
  for (unsigned k = 1; k <= stages; ++k) {
    HatStage st;
    st.k = k;
    // m = K! rather than k!: every entry, not only the tail, is then 1 mod each m <= K.
    st.multiplier = factorial(stages);
    st.delta = Rational(1) / Rational(st.multiplier * st.multiplier * ipow(4, k));
    const Rational need = Rational(3, 2) / st.delta;
    const RealOracle target = theta.scaled(Rational(-1) / Rational(st.multiplier));
    auto sol = inhomogeneous_approx(theta, target, st.delta, cf, config);
    const bool done = sol.has_value();
    Integer last_q = cf.convergents.empty() ? Integer(0) : cf.convergents.back().second;
    if (done) {
      st.n = sol->n;
      st.distance = sol->distance;
      st.entry = 1 + st.multiplier * sol->n;
    }
    if (!done)
      fail(ErrorCode::SearchExhausted, "stage " + std::to_string(k) + ": no solution among convergent denominators up to " +
                                           to_string(last_q));
    for (Integer m = 2; m <= Integer(stages); ++m)
      if (st.entry % m != 1 % m) fail(ErrorCode::InvalidArgument, "internal: hat entry not 1 mod " + to_string(m));
    entries.push_back(st.entry);
    out.stages.push_back(st);
  }
  ApproxSequence& s = out.sequence;
  s.entries = entries;
  s.provenance = Provenance::Constructed;
  s.method = "hat";
  s.theta = theta.literal();
  IntVector d;
  for (const auto& e : entries) d.push_back(nearest_integer(theta.scaled(Rational(e)), config.precision + max_bits(entries), config.precision_cap).n);
  s.duals = std::move(d);
  // For q theta: ||q e_k theta|| <= q m ||theta/m + n theta|| < q / (m 4^k).
  for (unsigned q = 1; q <= stages; ++q) {
    std::vector<double> bounds;
    for (const auto& st : out.stages)
      bounds.push_back(log2_of(Rational(Integer(q) * st.multiplier) * st.delta));
    s.certificates.push_back(certificate_from_bounds(theta.scaled(Rational(q)).literal(), bounds));
  }
  return out;
}

std::vector<std::pair<Integer, Integer>> pair_form(const RealOracle& theta, const ApproxSequence& seq,
                                                   const Config& config) {
  ErrorProfile prof = error_term(theta, seq, config);
  std::vector<std::pair<Integer, Integer>> out;
  for (std::size_t i = 0; i < seq.size(); ++i) out.emplace_back(seq.entries[i], prof.duals[i].get_num());
  return out;
}

}  // namespace diophlab::dagroups
