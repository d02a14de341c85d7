#include "diophlab/cli/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "diophlab/core/config.hpp"
#include "diophlab/core/error.hpp"
#include "diophlab/dagroups/dagroups.hpp"
#include "diophlab/foliation/foliation.hpp"
#include "diophlab/lattice/simultaneous.hpp"
#include "diophlab/matrixdioph/matrixdioph.hpp"
#include "diophlab/numfield/numfield.hpp"
#include "diophlab/polyapprox/polyapprox.hpp"
#include "diophlab/rigidity/rigidity.hpp"
#include "json.hpp"

namespace diophlab::cli {
namespace {

using json = nlohmann::ordered_json;
using dagroups::ApproxSequence;
using matrixdioph::RealMatrix;

// ---- serialization -------------------------------------------------------

json jint(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

json jints(const IntVector& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(jint(z));
  return a;
}

json jrats(const RatVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json jreal(const PrecisionReal& x) {
  json j;
  j["approx"] = x.mid_double();
  j["width"] = x.width_double();
  if (x.exact()) j["exact"] = to_string(*x.exact());
  return j;
}

json jreals(const std::vector<PrecisionReal>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(jreal(x));
  return a;
}

json jcert(const dagroups::DecayCertificate& c) { return {{"theta", c.theta}, {"C", c.C}, {"lambda", c.lambda}}; }

json jseq(const ApproxSequence& s) {
  json j;
  j["entries"] = jints(s.entries);
  j["duals"] = s.duals ? jints(*s.duals) : json(nullptr);
  j["theta"] = s.theta ? json(*s.theta) : json(nullptr);
  j["provenance"] = s.provenance == dagroups::Provenance::Constructed ? "Constructed" : "UserSupplied";
  j["method"] = s.method;
  j["certificates"] = json::array();
  for (const auto& c : s.certificates) j["certificates"].push_back(jcert(c));
  return j;
}

json jverdict(const dagroups::MembershipVerdict& v) {
  json j;
  j["status"] = dagroups::status_name(v.status);
  j["tau"] = v.tau;
  j["lambda"] = v.lambda;
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  j["reason"] = v.reason;
  j["constraint"] = v.constraint.describe();
  j["duals"] = v.duals ? jrats(*v.duals) : json(nullptr);
  return j;
}

json jrelation(const lattice::RelationCertificate& c) {
  json j;
  j["status"] = lattice::status_name(c.status);
  j["relation"] = jints(c.relation);
  j["height_bound"] = jint(c.height_bound);
  j["residual_floor"] = c.residual_floor;
  j["proven_none"] = c.proven_none;
  j["degree_bound"] = c.degree_bound ? json(*c.degree_bound) : json(nullptr);
  j["precision_bits"] = c.precision_bits;
  j["residuals"] = jreals(c.residuals);
  return j;
}

json jpoly(const polyapprox::IntPolynomial& f) {
  json terms = json::object();
  for (const auto& [k, v] : f.to_map()) terms[k] = v;
  return {{"text", f.to_string()}, {"variables", f.variables()}, {"degree", f.degree()}, {"terms", terms}};
}

json jpolycert(const polyapprox::PolyCertificate& c) {
  json j;
  j["found"] = c.found();
  j["polynomial"] = c.polynomial ? jpoly(*c.polynomial) : json(nullptr);
  j["degree_searched"] = c.degree_searched;
  j["certificate"] = jrelation(c.relation);
  return j;
}

json jelement(const numfield::NumberField& k, const numfield::FieldElement& x) {
  return {{"text", k.format(x)}, {"coords", jrats(x.coords)}};
}

json jelements(const numfield::NumberField& k, const std::vector<numfield::FieldElement>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(jelement(k, x));
  return a;
}

json joseq(const numfield::NumberField& k, const numfield::OApproxSequence& s) {
  json j;
  j["entries"] = jelements(k, s.entries);
  j["duals"] = s.duals ? jelements(k, *s.duals) : json(nullptr);
  j["theta"] = s.theta ? json(*s.theta) : json(nullptr);
  j["method"] = s.method;
  j["certificates"] = json::array();
  for (const auto& c : s.certificates) j["certificates"].push_back(jcert(c));
  j["local_certificates"] = json::object();
  for (const auto& [place, c] : s.local_certificates) j["local_certificates"][std::to_string(place + 1)] = jcert(c);
  return j;
}

json joverdict(const numfield::OVerdict& v) {
  json j;
  j["global"] = dagroups::status_name(v.global);
  j["tau"] = v.tau;
  j["witness_place"] = v.witness_place ? json(*v.witness_place) : json(nullptr);
  j["places"] = json::array();
  for (std::size_t nu = 0; nu < v.places.size(); ++nu) {
    json p = jverdict(v.places[nu]);
    p["place"] = nu + 1;
    p["profile"] = jreals(v.profiles.eps[nu]);
    j["places"].push_back(std::move(p));
  }
  return j;
}

json jrelverdict(const rigidity::RelationVerdict& v) {
  json j;
  j["relation"] = v.relation == rigidity::RelationKind::LD ? "LD" : "AD";
  if (v.relation == rigidity::RelationKind::LD) j["field"] = v.field;
  j["status"] = rigidity::verdict_name(v.status);
  j["certificate"] = lattice::status_name(v.certificate);
  if (v.relation == rigidity::RelationKind::LD) j["coefficients"] = v.coefficient_text;
  else j["polynomial"] = v.polynomial ? jpoly(*v.polynomial) : json(nullptr);
  j["height"] = jint(v.height);
  if (v.relation == rigidity::RelationKind::AD) j["degree"] = v.degree;
  j["residual_floor"] = v.residual_floor;
  j["reason"] = v.reason;
  return j;
}

json jpullback(const rigidity::PullbackReport& r) {
  json j;
  j["holds"] = r.holds;
  j["not_detected"] = r.not_detected;
  j["projections"] = json::array();
  for (const auto& p : r.projections)
    j["projections"].push_back({{"I", p.dom}, {"J", p.ran}, {"coordinates", p.labels}, {"filtered", p.filtered},
                                {"verdict", jrelverdict(p.verdict)}});
  return j;
}

json jharness(const rigidity::HarnessReport& r) {
  json j;
  j["name"] = r.name;
  j["theta"] = r.theta;
  j["outcome"] = rigidity::outcome_name(r.outcome);
  j["premise"] = r.premise;
  j["conclusion"] = r.conclusion;
  j["statement"] = r.summary;
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"label", c.label}, {"verdict", jrelverdict(c.verdict)}});
  if (r.pullback) j["pullback"] = jpullback(*r.pullback);
  if (r.exponential)
    j["exponential"] = {{"polynomial", jpoly(r.exponential->polynomial)},
                        {"exact", r.exponential->exact},
                        {"verified", r.exponential->verified},
                        {"value", jreal(r.exponential->value)}};
  return j;
}

json jleaf(const foliation::LeafType& t) {
  json lat = json::array(), emp = json::array();
  for (const auto& v : t.lattice) lat.push_back(jints(v));
  for (const auto& v : t.empirical) emp.push_back(jints(v));
  return {{"kind", foliation::leaf_kind_name(t.kind)}, {"rank", t.rank}, {"s", t.s},    {"describe", t.describe()},
          {"lattice", lat},                             {"empirical", emp}, {"height", jint(t.height)}};
}

json jindependence(const matrixdioph::IndependenceVerdict& v) {
  json j;
  j["verdict"] = matrixdioph::independence_name(v.verdict);
  j["height"] = jint(v.height);
  j["exact"] = v.exact;
  j["certificate"] = v.certificate ? jrelation(*v.certificate) : json(nullptr);
  j["relations"] = json::array();
  for (const auto& r : v.relations) j["relations"].push_back(jrelation(r));
  j["residual_floor"] = v.residual_floor;
  if (!v.m.empty() || !v.m_perp.empty()) {
    j["m"] = jints(v.m);
    j["m_perp"] = jints(v.m_perp);
  }
  return j;
}

json jclosure(const matrixdioph::TorusClosure& c) {
  json rel = json::array();
  for (const auto& v : c.relations) rel.push_back(jints(v));
  return {{"kind", matrixdioph::closure_name(c.kind)},
          {"order", jint(c.order)},
          {"dimension", c.dimension},
          {"relations", rel},
          {"exact", c.exact},
          {"samples", c.samples},
          {"discrepancy", c.discrepancy},
          {"sampling_consistent", c.sampling_consistent}};
}

// ---- argument parsing ----------------------------------------------------

OracleVector oracle_list(const std::string& text) {
  OracleMatrix m = parse_oracle_matrix(text);
  if (m.size() == 1) return m[0];
  OracleVector out;
  for (auto& row : m) {
    if (row.size() != 1) fail(ErrorCode::Parse, "expected a list of reals, got a matrix: " + text);
    out.push_back(row[0]);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

RatVector rational_list(const std::string& text) {
  RatVector out;
  for (const auto& s : split(text, ',')) out.push_back(parse_rational(s));
  return out;
}

dagroups::NumeratorConstraint parse_constraint(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "integers" && colon == std::string::npos) return dagroups::NumeratorConstraint::integers();
  if (colon == std::string::npos) fail(ErrorCode::Usage, "constraint '" + text + "' needs a parameter");
  const Integer n = parse_integer(text.substr(colon + 1));
  if (kind == "inverted") return dagroups::NumeratorConstraint::inverted_scale(n);
  if (kind == "divisible") return dagroups::NumeratorConstraint::divisible_by_all(n);
  if (kind == "ideal") return dagroups::NumeratorConstraint::scaled_ideal(n);
  fail(ErrorCode::Usage, "unknown constraint '" + text + "' (integers, inverted:N, divisible:B, ideal:N)");
}

// ---- invocation state ----------------------------------------------------

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;  // config key -> flag text
};

Config effective_config(const Overrides& o) {
  Config c = Config::load(o.config_path.empty() ? std::nullopt : std::optional<std::string>(o.config_path));
  // Flags go through the TOML path so they share its parsing and checks.
  std::string doc;
  for (const auto& [key, text] : o.values) {
    const bool numeric = !text.empty() && text.find_first_not_of("0123456789.eE+-") == std::string::npos;
    const bool textual = key == "delta" || key == "height";
    doc += key + " = " + (numeric && !textual ? text : json(text).dump()) + "\n";
  }
  if (!doc.empty()) c.apply_toml(doc);
  c.validate();
  return c;
}

struct Command {
  std::string name;
  std::function<json(const Config&)> body;
};

// Flags shared by subcommands; unused ones stay empty.
struct Args {
  std::string theta, seq, seq2, op = "membership", constraint = "integers", field, eta, matrix, entries, construct,
      alpha, minpoly, start, step, ns, format = "svg", out, projection, fn = "exp", harness_name, ld_height = "10000",
      ad_height = "1000", harness_field = "Q(sqrt 2)", q_bound = "1000000", c1 = "1", c2 = "1";
  long k = 10, convergents = 0, stages = 0, sigma = 1, points = 0, samples = 0, dmax = 3;
  bool homogeneous = false, dagger = false, algebraic = false, curated = false;
};

ApproxSequence group_sequence(const Args& a, const RealOracle& theta, const std::string& text, const Config& c) {
  if (!text.empty()) return dagroups::parse_sequence(text);
  const std::size_t n = a.convergents > 0 ? static_cast<std::size_t>(a.convergents) : c.length;
  return dagroups::convergent_sequence(theta, n, c);
}

json group(const Args& a, const Config& c) {
  const RealOracle theta = RealOracle::parse(a.theta);
  json j;
  j["theta"] = theta.literal();
  j["op"] = a.op;
  if (a.op == "hat") {
    const unsigned stages = a.stages > 0 ? static_cast<unsigned>(a.stages) : c.hat_stages;
    dagroups::HatElement h = dagroups::hat_element(theta, stages, c);
    j["sequence"] = jseq(h.sequence);
    j["stages"] = json::array();
    for (const auto& s : h.stages)
      j["stages"].push_back({{"k", s.k},
                             {"m", jint(s.multiplier)},
                             {"n", jint(s.n)},
                             {"delta", to_string(s.delta)},
                             {"distance", jreal(s.distance)},
                             {"entry", jint(s.entry)}});
    return j;
  }
  ApproxSequence seq = group_sequence(a, theta, a.seq, c);
  j["sequence"] = jseq(seq);
  if (a.op == "membership") {
    j["verdict"] = jverdict(dagroups::membership(theta, seq, parse_constraint(a.constraint), c.tau, c));
  } else if (a.op == "error") {
    dagroups::ErrorProfile p = dagroups::error_term(theta, seq, c);
    j["epsilons"] = jreals(p.epsilons);
    j["duals"] = jrats(p.duals);
    j["fit"] = p.fit ? json{{"C", p.fit->C}, {"lambda", p.fit->lambda}, {"r2", p.fit->r2}} : json(nullptr);
  } else if (a.op == "dual") {
    j["dual"] = jseq(dagroups::dual(theta, seq, c));
  } else if (a.op == "witness") {
    json w = json::array();
    for (const auto& n : dagroups::scaling_witness(theta, seq, c)) w.push_back(jint(n));
    j["witness"] = w;
  } else if (a.op == "circle") {
    StdEstimate e = dagroups::circle_part(theta, seq, c);
    j["has_limit"] = e.has_limit;
    j["limit"] = e.limit ? json{{"mid", e.limit->mid_double()}, {"width", e.limit->width_double()}} : json(nullptr);
    j["clusters"] = json::array();
    for (const auto& cl : e.clusters)
      j["clusters"].push_back(
          {{"center", cl.center}, {"density", cl.density}, {"tail_density", cl.tail_density}, {"count", cl.count}});
  } else if (a.op == "pair") {
    json p = json::array();
    for (const auto& [n, m] : dagroups::pair_form(theta, seq, c)) p.push_back({jint(n), jint(m)});
    j["pairs"] = p;
  } else if (a.op == "combine") {
    if (a.seq2.empty()) fail(ErrorCode::Usage, "combine needs --seq2");
    ApproxSequence other = dagroups::parse_sequence(a.seq2);
    j["combined"] = jseq(dagroups::combine(seq, other, parse_integer(a.c1), parse_integer(a.c2)));
  } else {
    fail(ErrorCode::Usage, "unknown group op '" + a.op + "' (membership, error, dual, witness, circle, pair, combine, hat)");
  }
  return j;
}

json simul(const Args& a, const Config& c) {
  json j;
  if (!a.matrix.empty()) {
    RealMatrix theta = RealMatrix::parse(a.matrix);
    matrixdioph::VectorApproxSequence seq = a.seq.empty()
                                                ? matrixdioph::simultaneous_sequence(theta, c.length, c)
                                                : matrixdioph::parse_vector_sequence(a.seq);
    matrixdioph::VectorVerdict v = matrixdioph::vector_membership(theta, seq, a.homogeneous, c.tau, c);
    json entries = json::array();
    for (const auto& e : seq.entries) entries.push_back(jints(e));
    j["matrix"] = theta.key();
    j["entries"] = entries;
    j["method"] = seq.method;
    j["homogeneous"] = v.homogeneous;
    j["status"] = dagroups::status_name(v.status);
    j["tau"] = v.tau;
    j["lambda"] = v.lambda;
    j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
    j["witness_row"] = v.witness_row ? json(*v.witness_row) : json(nullptr);
    j["reason"] = v.reason;
    return j;
  }
  if (a.theta.empty()) fail(ErrorCode::Usage, "simul needs --theta or --matrix");
  OracleVector theta = oracle_list(a.theta);
  const Integer q_bound = parse_integer(a.q_bound);
  lattice::SimultaneousApprox s = lattice::simultaneous_approx(theta, q_bound, {c.precision, c.scan_cap});
  json lits = json::array();
  for (const auto& t : theta) lits.push_back(t.literal());
  j["theta"] = lits;
  j["Q"] = jint(q_bound);
  j["q"] = jint(s.q);
  j["p"] = jints(s.p);
  j["errors"] = jreals(s.errors);
  j["max_error"] = s.max_error;
  j["meets_dirichlet_bound"] = s.meets_dirichlet_bound;
  return j;
}

json indep(const std::string& mode, const Args& a, const Config& c) {
  RealMatrix theta = RealMatrix::parse(a.matrix);
  json j;
  j["matrix"] = theta.key();
  j["mode"] = mode;
  if (mode == "homogeneous") j["result"] = jindependence(matrixdioph::homogeneous_independence(theta, c.height, c));
  else if (mode == "inhomogeneous")
    j["result"] = jindependence(matrixdioph::inhomogeneous_independence(theta, c.height, c));
  else {
    const std::size_t n = a.samples > 0 ? static_cast<std::size_t>(a.samples) : c.orbit_points;
    j["result"] = jclosure(matrixdioph::torus_closure(theta, c.height, n, c));
  }
  return j;
}

json dirichlet_k(const Args& a, const Config& c) {
  const numfield::NumberField k = numfield::NumberField::parse(a.field);
  const RealOracle theta = RealOracle::parse(a.theta);
  const numfield::FieldElement eta = k.parse_element(a.eta);
  numfield::KDirichletResult r = numfield::k_dirichlet(k, theta, eta, c);
  json j;
  j["field"] = k.name();
  j["theta"] = theta.literal();
  j["eta"] = jelement(k, eta);
  j["gamma"] = jelement(k, r.gamma);
  j["gamma_perp"] = jelement(k, r.gamma_perp);
  j["beta_new"] = jelement(k, r.beta_new);
  j["beta_old"] = jelement(k, r.beta_old);
  j["collided_with_one_a"] = r.collided_with_one_a;
  j["trivial"] = r.trivial;
  j["enumerated"] = r.enumerated;
  j["gamma_norm2"] = to_string(r.gamma_norm2);
  j["eta_norm2"] = to_string(r.eta_norm2);
  j["error_norm2"] = jreal(r.error_norm2);
  j["bound_norm2"] = to_string(r.bound_norm2);
  j["gamma_within_eta"] = r.gamma_norm2 <= r.eta_norm2;
  j["certified"] = r.certified;
  return j;
}

numfield::OApproxSequence o_sequence(const numfield::NumberField& k, const RealOracle& theta, const Args& a,
                                     const Config& c) {
  if (!a.entries.empty()) {
    json list = json::parse(a.entries);
    if (!list.is_array()) fail(ErrorCode::Parse, "--entries must be a JSON array");
    numfield::OApproxSequence s;
    s.method = "user";
    for (const auto& e : list) s.entries.push_back(k.parse_element(e.is_string() ? e.get<std::string>() : e.dump()));
    return s;
  }
  const std::size_t n = c.length;
  if (a.construct == "half-shift") return numfield::half_shift_sequence(k, theta, n, c);
  if (a.construct.empty() || a.construct == "diagonal")
    return numfield::diagonal_sequence(k, dagroups::convergent_sequence(theta, n, c));
  fail(ErrorCode::Usage, "unknown construction '" + a.construct + "' (diagonal, half-shift)");
}

json ofield(const std::string& mode, const Args& a, const Config& c) {
  const numfield::NumberField k = numfield::NumberField::parse(a.field.empty() ? "Q" : a.field);
  json j;
  j["field"] = k.name();
  j["mode"] = mode;
  if (mode == "cleardenom") {
    numfield::ClearedDenominator r;
    if (!a.minpoly.empty()) {
      IntVector poly;
      for (const auto& e : json::parse(a.minpoly)) poly.push_back(parse_integer(e.is_string() ? e.get<std::string>() : e.dump()));
      r = numfield::clear_denominator(poly);
    } else {
      r = numfield::clear_denominator(RealOracle::parse(a.alpha), c);
    }
    j["a"] = jint(r.a);
    j["monic"] = jints(r.monic);
    j["integral"] = r.integral ? json(r.integral->literal()) : json(nullptr);
    return j;
  }
  const RealOracle theta = RealOracle::parse(a.theta);
  j["theta"] = theta.literal();
  if (mode == "krational") {
    numfield::KRationalResult r = numfield::krational_test(k, theta, c.height, c);
    j["rational"] = r.rational;
    j["place"] = r.rational ? json(r.place + 1) : json(nullptr);
    j["alpha"] = jelement(k, r.alpha);
    j["beta"] = jelement(k, r.beta);
    j["status"] = lattice::status_name(r.status);
    j["height"] = jint(r.height);
    j["residual_floor"] = r.residual_floor;
    return j;
  }
  numfield::OApproxSequence seq = o_sequence(k, theta, a, c);
  j["sequence"] = joseq(k, seq);
  if (mode == "o-membership") {
    j["verdict"] = joverdict(numfield::o_membership(k, theta, seq, c.tau, c));
  } else if (mode == "trace") {
    ApproxSequence t = numfield::trace_push(k, theta, seq, c);
    j["trace"] = jseq(t);
    j["tau"] = 2 * c.tau;
    j["verdict"] = jverdict(dagroups::membership(theta, t, dagroups::NumeratorConstraint::integers(), 2 * c.tau, c));
  } else if (mode == "galois") {
    if (a.sigma < 1 || static_cast<std::size_t>(a.sigma) > k.automorphisms().size())
      fail(ErrorCode::NotAutomorphism, k.name() + " lists " + std::to_string(k.automorphisms().size()) +
                                           " nontrivial automorphisms; --sigma " + std::to_string(a.sigma) + " is out of range");
    const RatMatrix& sigma = k.automorphisms()[static_cast<std::size_t>(a.sigma - 1)];
    numfield::GaloisResult g = numfield::galois_apply(k, sigma, theta, seq, c);
    json pm = json::array();
    for (std::size_t mu : g.place_map) pm.push_back(mu + 1);
    j["sigma"] = a.sigma;
    j["place_map"] = pm;
    j["image"] = joseq(k, g.sequence);
    j["verdict"] = joverdict(numfield::o_membership(k, theta, seq, c.tau, c));
    j["image_verdict"] = joverdict(numfield::o_membership(k, theta, g.sequence, c.tau, c));
  } else if (mode == "conjpoly") {
    polyapprox::PolySequence ps = numfield::conjugate_poly(k, theta, seq, c);
    j["degree_bound"] = ps.degree_bound;
    j["polynomials"] = json::array();
    for (const auto& f : ps.polys) j["polynomials"].push_back(jpoly(f));
    j["profile"] = jreals(ps.profile({theta}, c.precision));
  } else {
    fail(ErrorCode::Usage, "unknown ofield mode '" + mode + "'");
  }
  return j;
}

json minpoly(const Args& a, const Config& c) {
  const RealOracle theta = RealOracle::parse(a.theta);
  json j = jpolycert(polyapprox::minimal_polynomial(theta, c.degree, c.height, c));
  j["theta"] = theta.literal();
  j["dmax"] = c.degree;
  j["hmax"] = jint(c.height);
  return j;
}

json algdep(const Args& a, const Config& c) {
  OracleVector theta = oracle_list(a.theta);
  json j = jpolycert(polyapprox::algebraic_dependence(theta, c.degree, c.height, c, a.dagger));
  json lits = json::array();
  for (const auto& t : theta) lits.push_back(t.literal());
  j["theta"] = lits;
  j["dmax"] = c.degree;
  j["hmax"] = jint(c.height);
  j["dagger"] = a.dagger;
  return j;
}

foliation::OrbitSample sample_from(const Args& a, const Config& c) {
  RealMatrix theta = RealMatrix::parse(a.matrix);
  const std::size_t n = a.points > 0 ? static_cast<std::size_t>(a.points) : c.orbit_points;
  OracleVector step = a.step.empty() ? OracleVector{} : oracle_list(a.step);
  return foliation::orbit_sample(theta, n, a.start.empty() ? RatVector{} : rational_list(a.start), step, c);
}

json foliate(const std::string& mode, const Args& a, const Config& c) {
  json j;
  j["mode"] = mode;
  if (mode == "tower") {
    const RealOracle theta = RealOracle::parse(a.theta);
    std::vector<long> ns;
    for (const auto& s : split(a.ns.empty() ? "1,2,6" : a.ns, ',')) ns.push_back(parse_integer(s).get_si());
    const std::size_t n = a.points > 0 ? static_cast<std::size_t>(a.points) : c.orbit_points;
    j["theta"] = theta.literal();
    j["levels"] = json::array();
    for (const auto& l : foliation::covering_tower(theta, ns, n, c))
      j["levels"].push_back({{"n", l.n},
                             {"source", l.source.theta},
                             {"points", l.source.points.size()},
                             {"max_deviation", l.max_deviation},
                             {"verified", l.verified}});
    return j;
  }
  RealMatrix theta = RealMatrix::parse(a.matrix);
  j["matrix"] = theta.key();
  if (mode == "classify") {
    foliation::LeafReport r = foliation::classify_leaves(theta, c.height, c);
    j["inhomogeneous"] = jleaf(r.inhomogeneous);
    j["homogeneous"] = jleaf(r.homogeneous);
  } else if (mode == "minimal") {
    const std::size_t n = a.samples > 0 ? static_cast<std::size_t>(a.samples) : c.orbit_points;
    foliation::MinimalityVerdict v = foliation::minimality(theta, c.height, n, c);
    j["minimal"] = v.minimal;
    j["descriptor"] = v.descriptor;
    j["closure"] = jclosure(v.closure);
  } else if (mode == "orbit" || mode == "render") {
    foliation::OrbitSample s = sample_from(a, c);
    j["points"] = s.points.size();
    j["dimension"] = s.dimension();
    j["start"] = jrats(s.start);
    j["step"] = s.step;
    if (mode == "orbit") {
      j["transversal_discrepancy"] = foliation::transversal_discrepancy(s);
      j["leaf_equation_defect"] = foliation::leaf_equation_defect(theta, s, c);
      return j;
    }
    if (a.out.empty()) fail(ErrorCode::Usage, "render needs --out");
    foliation::RenderFormat fmt;
    if (a.format == "csv") fmt = foliation::RenderFormat::Csv;
    else if (a.format == "svg") fmt = foliation::RenderFormat::Svg;
    else fail(ErrorCode::Usage, "unknown render format '" + a.format + "' (csv, svg)");
    foliation::RenderOptions opts;
    if (!a.projection.empty()) {
      auto parts = split(a.projection, ',');
      if (parts.size() != 2) fail(ErrorCode::Usage, "--projection takes two coordinates, e.g. 2,3");
      opts.projection = std::make_pair(parse_integer(parts[0]).get_ui(), parse_integer(parts[1]).get_ui());
    }
    const std::string doc = foliation::render(s, fmt, opts);
    std::ofstream f(a.out, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + a.out);
    f << doc;
    j["format"] = a.format;
    j["path"] = a.out;
    j["bytes"] = doc.size();
  } else {
    fail(ErrorCode::Usage, "unknown foliate mode '" + mode + "'");
  }
  return j;
}

json rigidity_cmd(const std::string& mode, const Args& a, const Config& c) {
  json j;
  j["mode"] = mode;
  if (mode == "harness") {
    rigidity::HarnessBounds b;
    b.ld_height = parse_integer(a.ld_height);
    b.ad_height = parse_integer(a.ad_height);
    if (a.dmax < 1) fail(ErrorCode::InvalidArgument, "--dmax must be at least 1");
    b.dmax = static_cast<unsigned>(a.dmax);
    b.field = a.harness_field;
    j["bounds"] = {{"ld_height", jint(b.ld_height)}, {"dmax", b.dmax}, {"ad_height", jint(b.ad_height)}, {"field", b.field}};
    if (a.curated) {
      j["reports"] = json::array();
      std::size_t candidates = 0;
      for (const auto& inst : rigidity::curated_suite()) {
        rigidity::HarnessReport r = rigidity::conjecture_harness(inst.harness, parse_oracle_list(inst.theta), b, c);
        candidates += r.outcome == rigidity::Outcome::CounterexampleCandidate;
        j["reports"].push_back(jharness(r));
      }
      j["counterexample_candidates"] = candidates;
      return j;
    }
    if (a.harness_name.empty() || a.theta.empty()) fail(ErrorCode::Usage, "harness needs --name and --theta, or --curated");
    j["report"] = jharness(rigidity::conjecture_harness(a.harness_name, oracle_list(a.theta), b, c));
    return j;
  }
  OracleVector theta = oracle_list(a.theta);
  json lits = json::array();
  for (const auto& t : theta) lits.push_back(t.literal());
  j["theta"] = lits;
  if (mode == "ld") {
    j["verdict"] = jrelverdict(rigidity::ld_check(theta, numfield::NumberField::parse(a.field.empty() ? "Q" : a.field),
                                                 c.height, c));
  } else if (mode == "ad") {
    j["verdict"] = jrelverdict(rigidity::ad_check(theta, c.degree, c.height, c));
  } else if (mode == "pullback") {
    rigidity::GraphFunction f;
    if (a.fn == "exp") f = rigidity::GraphFunction::Exp;
    else if (a.fn == "id") f = rigidity::GraphFunction::Identity;
    else fail(ErrorCode::Usage, "unknown graph function '" + a.fn + "' (exp, id)");
    j["function"] = a.fn;
    j["report"] = jpullback(rigidity::graph_pullback(theta, c.degree, c.height, f, a.algebraic, c));
  } else {
    fail(ErrorCode::Usage, "unknown rigidity mode '" + mode + "'");
  }
  return j;
}

void pretty_print(std::ostream& out, const std::string& command, const json& result) {
  out << command << "\n";
  for (auto it = result.begin(); it != result.end(); ++it) {
    std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    if (v.size() > 160) v = v.substr(0, 157) + "...";
    out << "  " << it.key() << ": " << v << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"diophlab: diophantine approximation groups, certified", "diophlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  bool pretty = false;
  app.add_option("--config", o.config_path, "TOML config file (overrides $DIOPHLAB_CONFIG)");
  app.add_flag("--pretty", pretty, "human-readable summary instead of JSON");
  const std::vector<std::pair<std::string, std::string>> config_flags = {
      {"--precision", "precision"},        {"--precision-cap", "precision_cap"},
      {"--delta", "delta"},                {"--height", "height"},
      {"--degree", "degree"},              {"--tau", "tau"},
      {"--lambda-min", "lambda_min"},      {"--r2-min", "r2_min"},
      {"--length", "length"},              {"--witness-bound", "witness_bound"},
      {"--enumeration-cap", "enumeration_cap"}, {"--hat-stages", "hat_stages"},
      {"--divisible-bound", "divisible_bound"}, {"--rho", "rho"},
      {"--cluster-radius", "cluster_radius"}, {"--orbit-points", "orbit_points"},
      {"--scan-cap", "scan_cap"},          {"--seed", "seed"}};
  for (const auto& [flag, key] : config_flags)
    app.add_option_function<std::string>(flag, [&o, key = key](const std::string& v) { o.values[key] = v; },
                                         "config " + key);

  Args a;
  std::string command, mode;
  std::vector<Command> commands;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };
  auto modes = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->callback([&mode, name] { mode = name; });
    return s;
  };

  CLI::App* cf = sub("cf", "continued fraction convergents");
  cf->add_option("--theta", a.theta)->required();
  cf->add_option("-k", a.k, "number of convergents")->check(CLI::Range(1, 100000));

  CLI::App* grp = sub("group", "membership, error term, dual, witness, hat element");
  grp->add_option("--theta", a.theta)->required();
  grp->add_option("--op", a.op, "membership|error|dual|witness|circle|pair|combine|hat");
  grp->add_option("--seq", a.seq, "JSON integer array; default: convergent denominators");
  grp->add_option("--seq2", a.seq2, "second sequence for combine");
  grp->add_option("--c1", a.c1);
  grp->add_option("--c2", a.c2);
  grp->add_option("--convergents", a.convergents, "length of the convergent sequence");
  grp->add_option("--constraint", a.constraint, "integers|inverted:N|divisible:B|ideal:N");
  grp->add_option("--stages", a.stages, "hat stages");

  CLI::App* sim = sub("simul", "simultaneous approximation, or vector membership with --matrix");
  sim->add_option("--theta", a.theta, "list of reals");
  sim->add_option("--Q", a.q_bound, "denominator bound");
  sim->add_option("--matrix", a.matrix);
  sim->add_option("--seq", a.seq, "JSON array of integer vectors");
  sim->add_flag("--homogeneous", a.homogeneous);

  CLI::App* ind = sub("indep", "independence of columns or rows");
  for (const std::string m : {"homogeneous", "inhomogeneous", "rows"}) {
    CLI::App* s = modes(ind, m, m == "rows" ? "torus closure of the row action" : m + " column independence");
    s->add_option("--matrix", a.matrix)->required();
    if (m == "rows") s->add_option("--samples", a.samples);
  }
  ind->require_subcommand(1);

  CLI::App* dk = sub("dirichlet-k", "K-Dirichlet approximation");
  dk->add_option("--field", a.field)->required();
  dk->add_option("--theta", a.theta)->required();
  dk->add_option("--eta", a.eta)->required();

  CLI::App* of = sub("ofield", "O-approximation sequences over a number field");
  for (const std::string m : {"o-membership", "trace", "galois", "conjpoly", "krational", "cleardenom"}) {
    CLI::App* s = modes(of, m, m);
    s->add_option("--field", a.field, "Q, Q(sqrt D), maxreal7 or a TOML path");
    if (m == "cleardenom") {
      s->add_option("--alpha", a.alpha, "algebraic literal");
      s->add_option("--minpoly", a.minpoly, "ascending integer coefficients");
      continue;
    }
    s->add_option("--theta", a.theta)->required();
    if (m == "krational") continue;
    s->add_option("--construct", a.construct, "diagonal|half-shift");
    s->add_option("--entries", a.entries, "JSON array of field elements");
    if (m == "galois") s->add_option("--sigma", a.sigma, "1-based index among listed automorphisms");
  }
  of->require_subcommand(1);

  CLI::App* mp = sub("minpoly", "minimal polynomial search");
  mp->add_option("--theta", a.theta)->required();
  CLI::App* ad = sub("algdep", "algebraic dependence search");
  ad->add_option("--theta", a.theta, "list of reals")->required();
  ad->add_flag("--dagger", a.dagger, "no constant term");

  CLI::App* fo = sub("foliate", "Kronecker foliations");
  for (const std::string m : {"classify", "minimal", "orbit", "tower", "render"}) {
    CLI::App* s = modes(fo, m, m);
    if (m == "tower") {
      s->add_option("--theta", a.theta)->required();
      s->add_option("--ns", a.ns, "covering degrees, e.g. 1,2,6");
      s->add_option("--points", a.points);
      continue;
    }
    s->add_option("--matrix", a.matrix)->required();
    if (m == "minimal") s->add_option("--samples", a.samples);
    if (m == "orbit" || m == "render") {
      s->add_option("--points", a.points);
      s->add_option("--start", a.start, "rational start point, e.g. 1/7,2/5");
      s->add_option("--step", a.step, "step direction, list of reals");
    }
    if (m == "render") {
      s->add_option("--format", a.format, "csv|svg");
      s->add_option("--out", a.out)->required();
      s->add_option("--projection", a.projection, "1-based coordinate pair, e.g. 2,3");
    }
  }
  fo->require_subcommand(1);

  CLI::App* rg = sub("rigidity", "relations LD and AD, graph pullback, conjecture harnesses");
  for (const std::string m : {"ld", "ad", "pullback", "harness"}) {
    CLI::App* s = modes(rg, m, m);
    s->add_option("--theta", a.theta, "list of reals");
    if (m == "ld") s->add_option("--field", a.field);
    if (m == "pullback") {
      s->add_option("--function", a.fn, "exp|id");
      s->add_flag("--algebraic", a.algebraic, "declare the instance algebraic-class");
    }
    if (m == "harness") {
      s->add_option("--name", a.harness_name, "baker|lw|logconj|schanuel");
      s->add_flag("--curated", a.curated, "run the curated suite");
      s->add_option("--ld-height", a.ld_height);
      s->add_option("--ad-height", a.ad_height);
      s->add_option("--dmax", a.dmax);
      s->add_option("--field", a.harness_field);
    }
  }
  rg->require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    // Help for the innermost subcommand named on the command line.
    CLI::App* target = &app;
    for (CLI::App* s = &app; !s->get_subcommands().empty();) target = s = s->get_subcommands().front();
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Config config;
  json doc;
  const std::string full = mode.empty() ? command : command + " " + mode;
  doc["command"] = full;
  try {
    config = effective_config(o);
    doc["config"] = json::parse(config.to_json().dump());
    json result;
    if (command == "cf") {
      const RealOracle theta = RealOracle::parse(a.theta);
      ContinuedFraction c = dagroups::convergents(theta, static_cast<std::size_t>(a.k), config);
      json p = json::array(), q = json::array();
      for (const auto& [pk, qk] : c.convergents) {
        p.push_back(jint(pk));
        q.push_back(jint(qk));
      }
      result = {{"theta", theta.literal()}, {"partial_quotients", jints(c.partial_quotients)},
                {"p", p}, {"q", q}, {"terminated", c.terminated}};
    } else if (command == "group") result = group(a, config);
    else if (command == "simul") result = simul(a, config);
    else if (command == "indep") result = indep(mode, a, config);
    else if (command == "dirichlet-k") result = dirichlet_k(a, config);
    else if (command == "ofield") result = ofield(mode, a, config);
    else if (command == "minpoly") result = minpoly(a, config);
    else if (command == "algdep") result = algdep(a, config);
    else if (command == "foliate") result = foliate(mode, a, config);
    else if (command == "rigidity") result = rigidity_cmd(mode, a, config);
    doc["result"] = std::move(result);
  } catch (const Error& e) {
    doc["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
    err << "error (" << error_name(e.code()) << "): " << e.what() << "\n";
    if (pretty) out << full << "\n  error: " << error_name(e.code()) << ": " << e.what() << "\n";
    else out << doc.dump(2) << "\n";
    return exit_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "usage error: malformed JSON argument: " << e.what() << "\n";
    return 2;
  }
  if (pretty) pretty_print(out, full, doc["result"]);
  else out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace diophlab::cli
