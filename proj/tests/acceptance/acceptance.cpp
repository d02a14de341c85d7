// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
// time limit is pinned below. The process fails only on unexpected failures;
// criteria listed in kKnownUnattainable are reported honestly but do not
// fail the run (see the note next to the list).

#include <mpfr.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sys/wait.h>
#include <sstream>

#include "diophlab/core/error.hpp"
#include "diophlab/dagroups/dagroups.hpp"
#include "diophlab/foliation/foliation.hpp"
#include "diophlab/matrixdioph/matrixdioph.hpp"
#include "diophlab/numeric/exact.hpp"
#include "diophlab/numeric/standard_part.hpp"
#include "diophlab/numeric/upoly.hpp"
#include "diophlab/numfield/numfield.hpp"
#include "diophlab/polyapprox/polyapprox.hpp"
#include "diophlab/rigidity/rigidity.hpp"
#include "support/test_oracles.hpp"

using namespace diophlab;
using dagroups::MembershipStatus;

namespace {

constexpr double kGoldenTolerance = 1e-12;     // |eps_k| against phi^-k
constexpr double kMembershipTau = 1e-3;
constexpr long kWitnessBound = 10000;
constexpr double kConjugateSlack = 1e-30;      // |f_i(theta)| <= prod |eps| + slack
constexpr unsigned kRefDigits = 80;            // decimal digits of reference roots
constexpr long kIndependenceHeight = 1000;

// Criterion 3 needs ||N n theta|| > 1/4 with N <= 10^4 at every index <= 10.
// For pi the fifth convergent denominator 33102 has |q pi - p| ~ 1.9e-5, so
// the first admissible N is about 13100, and later indices need N in the
// hundreds of thousands. No N <= 10^4 exists, so the criterion cannot hold
// for pi under any correct implementation. It runs unchanged and prints the
// required N per index.
const std::set<int> kKnownUnattainable{3};

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Result()> run;
};

// ---- independent references ----------------------------------------------

Rational ref_sqrt(long n) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, kRefDigits);
  return Rational(testref::decimal_sqrt(n, kRefDigits), scale);
}

Rational ref_phi() { return (1 + ref_sqrt(5)) / 2; }

Rational ref_pi() {
  mpfr_t x;
  mpfr_init2(x, 400);
  mpfr_const_pi(x, MPFR_RNDN);
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x);
  Rational out(q);
  mpq_clear(q);
  mpfr_clear(x);
  return out;
}

// Distance to the nearest integer, exactly.
Rational ref_dist(const Rational& x) {
  Rational fr = x - Rational(diophlab::floor(x));
  Rational up = 1 - fr;
  return fr < up ? fr : up;
}

IntVector fibonacci(std::size_t n, std::size_t offset) {
  IntVector f{0, 1};
  while (f.size() < n + offset + 1) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return IntVector(f.begin() + static_cast<long>(offset), f.begin() + static_cast<long>(offset + n));
}

dagroups::ApproxSequence scaled(const dagroups::ApproxSequence& s, long c) { return dagroups::combine(s, s, c, 0); }

bool overlaps(const PrecisionReal& a, const PrecisionReal& b) { return !(a - b).certainly_nonzero(); }

std::string str(const Integer& z) { return z.get_str(); }

// ---- criterion 1 -----------------------------------------------------------

Result golden_mean() {
  const RealOracle phi = RealOracle::parse("phi");
  const std::size_t n = 20;
  ContinuedFraction cf = dagroups::convergents(phi, n);
  const IntVector fib = fibonacci(n, 1);
  if (cf.convergents.size() != n) return {false, "expected 20 convergents"};
  for (std::size_t k = 0; k < n; ++k)
    if (cf.convergents[k].second != fib[k]) return {false, "denominator " + std::to_string(k + 1) + " is not Fibonacci"};

  auto seq = dagroups::convergent_sequence(phi, n);
  auto prof = dagroups::error_term(phi, seq);
  const Rational conj = (ref_sqrt(5) - 1) / 2;
  Rational pw = 1;
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    pw *= conj;
    // The reference value in Q(sqrt 5) must itself match phi^-k.
    Rational exact = abs(Rational(prof.duals[k]) - ref_phi() * Rational(seq.entries[k]));
    if (std::fabs(exact.get_d() - pw.get_d()) > 1e-40) return {false, "reference disagrees at k = " + std::to_string(k + 1)};
    worst = std::max(worst, std::fabs(prof.epsilons[k].abs().mid_double() - exact.get_d()));
  }
  if (worst > kGoldenTolerance) return {false, "max deviation " + std::to_string(worst)};

  auto v = dagroups::membership(phi, seq, dagroups::NumeratorConstraint::integers(), kMembershipTau);
  if (v.status != MembershipStatus::CertifiedMember) return {false, "membership is " + std::string(status_name(v.status))};

  auto d = dagroups::dual(phi, seq);
  if (d.entries != fibonacci(n, 2)) return {false, "dual does not map F_k to F_k+1"};
  auto dd = dagroups::dual(phi.reciprocal(), d);
  if (dd.entries != seq.entries || !dd.duals || *dd.duals != *seq.duals) return {false, "dual is not an involution"};
  char buf[96];
  std::snprintf(buf, sizeof buf, "20 Fibonacci denominators, max |eps_k - phi^-k| = %.1e", worst);
  return {true, buf};
}

// ---- criterion 2 -----------------------------------------------------------

Result rational_ideal_law() {
  std::size_t checked = 0;
  for (long b = 2; b <= 12; ++b)
    for (long a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const RealOracle t = RealOracle::rational(Rational(a, b));
      for (long x = -100; x <= 100; ++x) {
        for (const IntVector& e : {IntVector{x, x, x, x}, IntVector{x + 1, x, x, x}, IntVector{x, x, x, x + 1}}) {
          bool divides = true;
          for (const auto& z : e) divides = divides && (z % b == 0);
          auto v = dagroups::membership(t, dagroups::user_sequence(e), dagroups::NumeratorConstraint::integers(),
                                        kMembershipTau);
          const MembershipStatus want = divides ? MembershipStatus::CertifiedMember : MembershipStatus::NotMember;
          if (v.status != want)
            return {false, std::to_string(a) + "/" + std::to_string(b) + " at x = " + std::to_string(x) + ": got " +
                               std::string(status_name(v.status))};
          ++checked;
        }
      }
    }
  return {true, std::to_string(checked) + " sequences agree with b | n"};
}

// ---- criterion 3 -----------------------------------------------------------

Result scaling_witnesses() {
  const std::vector<std::pair<std::string, Rational>> cases{
      {"sqrt(2)", ref_sqrt(2)}, {"phi", ref_phi()}, {"pi", ref_pi()}};
  Config cfg;
  cfg.witness_bound = kWitnessBound;
  bool ok = true;
  std::string detail;
  for (const auto& [name, ref] : cases) {
    const RealOracle theta = RealOracle::parse(name);
    auto seq = dagroups::convergent_sequence(theta, 10, cfg);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      try {
        auto w = dagroups::scaling_witness(theta, dagroups::user_sequence({seq.entries[i]}), cfg);
        // Reference check with an 80-digit (or 400-bit) theta; its error is far below 1e-60.
        if (ref_dist(Rational(w[0] * seq.entries[i]) * ref) <= Rational(1, 4) + Rational(1, Integer("1" + std::string(60, '0'))))
          return {false, name + " index " + std::to_string(i + 1) + ": witness " + str(w[0]) + " fails the reference"};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WitnessNotFound) throw;
        // |N eps| grows by |eps| < 1/4 per step, so the first N past 1/4 is floor(1/(4|eps|)) + 1.
        Rational eps = ref_dist(Rational(seq.entries[i]) * ref);
        Integer need = diophlab::floor(Rational(1, 4) / eps) + 1;
        missing.push_back("i=" + std::to_string(i + 1) + " needs N=" + str(need));
      }
    }
    if (!missing.empty()) {
      ok = false;
      detail += name + ": no witness <= " + std::to_string(kWitnessBound) + " (";
      for (std::size_t k = 0; k < missing.size(); ++k) detail += (k ? ", " : "") + missing[k];
      detail += "); ";
    } else {
      detail += name + ": 10/10; ";
    }
  }
  return {ok, detail};
}

// ---- criterion 4 -----------------------------------------------------------

Result hat_generator() {
  const RealOracle s2 = RealOracle::sqrt(2);
  auto hat = dagroups::hat_element(s2, 4);
  if (hat.sequence.size() != 4) return {false, "expected 4 entries"};
  const Rational r2 = ref_sqrt(2);
  std::string entries;
  for (const auto& st : hat.stages) {
    for (long p : {2L, 3L})
      if (st.entry % p != 1) return {false, "entry " + str(st.entry) + " is not 1 mod " + std::to_string(p)};
    if (st.entry != 1 + st.multiplier * st.n) return {false, "entry is not 1 + m n"};
    if (ref_dist(r2 / Rational(st.multiplier) + Rational(st.n) * r2) >= st.delta)
      return {false, "stage " + std::to_string(st.k) + " misses its bound"};
    entries += (entries.empty() ? "" : ",") + str(st.entry);
  }
  for (long q = 1; q <= 4; ++q) {
    auto v = dagroups::membership(s2.scaled(Rational(q)), hat.sequence, dagroups::NumeratorConstraint::integers(),
                                  kMembershipTau);
    if (!v.member()) return {false, "q = " + std::to_string(q) + ": " + v.reason};
  }
  return {true, "entries [" + entries + "], q theta member for q = 1..4"};
}

// ---- criterion 5 -----------------------------------------------------------

long double ld_value(const std::string& name) {
  if (name == "pi") return 3.14159265358979323846264338327950288L;
  if (name == "e") return 2.71828182845904523536028747135266250L;
  return 0.69314718055994530941723212145817657L;
}

// Smallest error among nonzero differences over [0, eta)^2 and the points
// alone, subject to the same norm bounds as the solver.
std::optional<long double> pair_scan_best(const std::vector<long>& n, long double theta) {
  const std::size_t d = n.size();
  std::vector<std::vector<long>> elems{{}};
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<long>> next;
    for (const auto& e : elems)
      for (long a = 0; a < n[j]; ++a) {
        auto f = e;
        f.push_back(a);
        next.push_back(f);
      }
    elems = next;
  }
  long double bound = 0, eta2 = 0;
  for (long x : n) {
    bound += 1.0L / (x * x);
    eta2 += static_cast<long double>(x) * x;
  }
  std::optional<long double> best;
  auto consider = [&](const std::vector<long>& g) {
    long double err = 0, g2 = 0;
    bool nonzero = false;
    for (std::size_t j = 0; j < d; ++j) {
      long double v = g[j] * theta;
      long double e = v - std::round(v);
      err += e * e;
      g2 += static_cast<long double>(g[j]) * g[j];
      nonzero = nonzero || g[j] != 0;
    }
    if (nonzero && g2 < eta2 && err < bound && (!best || err < *best)) best = err;
  };
  for (const auto& b1 : elems) {
    consider(b1);
    for (const auto& b2 : elems) {
      std::vector<long> g(d);
      for (std::size_t j = 0; j < d; ++j) g[j] = b1[j] - b2[j];
      consider(g);
    }
  }
  return best;
}

Result k_dirichlet_random() {
  using namespace numfield;
  std::vector<NumberField> fields{NumberField::quadratic(2), NumberField::quadratic(3), NumberField::quadratic(5),
                                  NumberField::maxreal7()};
  const std::vector<std::string> thetas{"pi", "e", "log(2)"};
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coord(1, 5);
  int passed = 0;
  std::string first_failure;
  for (int trial = 0; trial < 100; ++trial) {
    const NumberField& k = fields[trial % fields.size()];
    const std::string& tname = thetas[(trial / 4) % thetas.size()];
    std::vector<long> n;
    RatVector eta;
    for (std::size_t j = 0; j < k.degree(); ++j) {
      n.push_back(coord(rng));
      eta.emplace_back(n.back());
    }
    KDirichletResult r = k_dirichlet(k, RealOracle::parse(tname), k.element(eta));
    const long double x = ld_value(tname == "log(2)" ? "log2" : tname);
    bool ok = r.certified;
    if (ok && !r.trivial) {
      long double err = 0, bound = 0, g2 = 0, eta2 = 0;
      for (std::size_t j = 0; j < k.degree(); ++j) {
        long double e = r.gamma.coords[j].get_d() * x - r.gamma_perp.coords[j].get_d();
        err += e * e;
        bound += 1.0L / (n[j] * n[j]);
        g2 += static_cast<long double>(r.gamma.coords[j].get_d()) * r.gamma.coords[j].get_d();
        eta2 += static_cast<long double>(n[j]) * n[j];
      }
      ok = r.gamma != k.zero() && err < bound && g2 < eta2 && r.error_norm2.enclosure().less_than(r.bound_norm2) &&
           r.gamma_norm2 < r.eta_norm2;
      auto best = pair_scan_best(n, x);
      ok = ok && best.has_value() && *best <= err + 1e-15L;
    }
    if (ok) ++passed;
    else if (first_failure.empty())
      first_failure = "; first failure: trial " + std::to_string(trial) + " over " + k.name() + ", theta " + tname;
  }
  return {passed == 100, std::to_string(passed) + "/100 certified and confirmed by the pair scan" + first_failure};
}

// ---- criteria 6 and 7 ------------------------------------------------------

struct RationalInstance {
  matrixdioph::RealMatrix theta;
  testref::QMat exact;
};

std::vector<RationalInstance> rational_matrices() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 3), num(-20, 20), den(1, 20), sparse(0, 3), copy(0, 4), mult(-3, 3);
  std::vector<RationalInstance> out;
  for (int t = 0; t < 200; ++t) {
    const int r = dim(rng), s = dim(rng);
    testref::QMat q(r, std::vector<testref::Q>(s));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) {
        Rational x = sparse(rng) == 0 ? Rational(0) : Rational(num(rng), den(rng));
        x.canonicalize();
        q[i][j] = x;
      }
    // Some instances get a column that is an integer multiple of the first.
    if (s > 1 && copy(rng) == 0) {
      const int c = mult(rng);
      for (int i = 0; i < r; ++i) q[i][s - 1] = q[i][0] * c;
    }
    OracleMatrix m(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) m[i].push_back(RealOracle::rational(q[i][j]));
    out.push_back({matrixdioph::RealMatrix::from_rows(m), q});
  }
  return out;
}

testref::ZMat cleared(const testref::QMat& q) {
  testref::ZMat out;
  for (const auto& row : q) {
    Integer d = 1;
    for (const auto& x : row) d = lcm(d, x.get_den());
    std::vector<testref::Z> z;
    for (const auto& x : row) z.push_back(Integer(x * d));
    out.push_back(z);
  }
  return out;
}

bool satisfies(const testref::QMat& q, const IntVector& m, const IntVector& m_perp) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    testref::Q acc = 0;
    for (std::size_t j = 0; j < m.size(); ++j) acc += q[i][j] * m[j];
    if (acc != (m_perp.empty() ? testref::Q(0) : testref::Q(m_perp[i]))) return false;
  }
  return true;
}

bool nonzero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return true;
  return false;
}

Result independence_equivalence() {
  int agree = 0;
  std::string first_failure;
  for (const auto& inst : rational_matrices()) {
    const std::size_t s = inst.theta.s(), r = inst.theta.r();
    const std::size_t rank = testref::rank_bareiss(cleared(inst.exact));
    auto h = matrixdioph::homogeneous_independence(inst.theta, kIndependenceHeight);
    auto inh = matrixdioph::inhomogeneous_independence(inst.theta, kIndependenceHeight);
    bool ok = h.exact && inh.exact;
    ok = ok && (h.verdict == matrixdioph::Independence::Dependent) == (rank < s);
    if (rank == s) ok = ok && h.verdict == matrixdioph::Independence::Independent;
    ok = ok && h.relations.size() == s - rank;
    for (const auto& c : h.relations) {
      IntVector v(c.relation.begin(), c.relation.begin() + static_cast<long>(s));
      ok = ok && nonzero(v) && satisfies(inst.exact, v, {});
    }
    // Rational Theta: the affine kernel has dimension s and m = 0 forces m_perp = 0.
    ok = ok && inh.verdict == matrixdioph::Independence::Dependent && inh.relations.size() == s;
    ok = ok && inh.m.size() == s && inh.m_perp.size() == r && nonzero(inh.m) && satisfies(inst.exact, inh.m, inh.m_perp);
    if (ok) ++agree;
    else if (first_failure.empty()) first_failure = "; first failure " + inst.theta.key();
  }
  return {agree == 200, std::to_string(agree) + "/200 agree with the fraction-free kernel" + first_failure};
}

// Exact surd matrices: entries a + b sqrt 2 + c sqrt 3, so ranks follow from
// the rational coefficient matrices.
struct SurdInstance {
  matrixdioph::RealMatrix theta;
  testref::QMat rational_part, irrational_parts;  // r x s and 2r x s
};

std::vector<SurdInstance> surd_matrices() {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> dim(1, 3), coef(-4, 4), den(1, 3), sparse(0, 2), copy(0, 2), mult(-2, 2);
  std::vector<SurdInstance> out;
  for (int t = 0; t < 20; ++t) {
    const int r = dim(rng), s = 1 + dim(rng) % 3;
    std::vector<std::vector<std::array<Rational, 3>>> c(r, std::vector<std::array<Rational, 3>>(s));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j)
        for (auto& x : c[i][j]) {
          x = sparse(rng) == 0 ? Rational(0) : Rational(coef(rng), den(rng));
          x.canonicalize();
        }
    if (s > 1 && copy(rng) == 0) {
      const int k = mult(rng);
      for (int i = 0; i < r; ++i)
        for (int b = 0; b < 3; ++b) c[i][s - 1][b] = c[i][0][b] * k;
    }
    SurdInstance inst;
    OracleMatrix m(r);
    inst.rational_part.assign(r, std::vector<testref::Q>(s));
    inst.irrational_parts.assign(2 * r, std::vector<testref::Q>(s));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) {
        m[i].push_back(RealOracle::rational(c[i][j][0]) + RealOracle::sqrt(2).scaled(c[i][j][1]) +
                       RealOracle::sqrt(3).scaled(c[i][j][2]));
        inst.rational_part[i][j] = c[i][j][0];
        inst.irrational_parts[2 * i][j] = c[i][j][1];
        inst.irrational_parts[2 * i + 1][j] = c[i][j][2];
      }
    inst.theta = matrixdioph::RealMatrix::from_rows(m);
    out.push_back(std::move(inst));
  }
  return out;
}

// Each lattice vector must be a relation of the verdict, and vice versa.
bool same_lattice(const foliation::LeafType& leaf, const matrixdioph::IndependenceVerdict& v, std::size_t length) {
  std::vector<IntVector> exact;
  for (const auto& c : v.relations)
    if (c.status == lattice::CertificateStatus::ExactVerified)
      exact.push_back(primitive_normalized(IntVector(c.relation.begin(), c.relation.begin() + static_cast<long>(length))));
  return exact == leaf.lattice;
}

Result dictionary_consistency() {
  int agree = 0, total = 0;
  std::string first_failure;
  auto note = [&](bool ok, const std::string& key) {
    ++total;
    if (ok) ++agree;
    else if (first_failure.empty()) first_failure = "; first failure " + key;
  };
  for (const auto& inst : rational_matrices()) {
    const std::size_t s = inst.theta.s(), r = inst.theta.r();
    auto rep = foliation::classify_leaves(inst.theta, kIndependenceHeight);
    auto inh = matrixdioph::inhomogeneous_independence(inst.theta, kIndependenceHeight);
    auto hom = matrixdioph::homogeneous_independence(inst.theta, kIndependenceHeight);
    bool ok = (rep.inhomogeneous.kind == foliation::LeafKind::Planar) == !inh.certificate.has_value();
    ok = ok && (rep.homogeneous.kind == foliation::LeafKind::Planar) == !hom.certificate.has_value();
    ok = ok && same_lattice(rep.inhomogeneous, inh, s + r) && same_lattice(rep.homogeneous, hom, s);
    ok = ok && rep.inhomogeneous.rank == s && rep.homogeneous.rank == s - testref::rank_q(inst.exact);
    for (const auto& v : rep.inhomogeneous.lattice)
      ok = ok && satisfies(inst.exact, IntVector(v.begin(), v.begin() + static_cast<long>(s)),
                           IntVector(v.begin() + static_cast<long>(s), v.end()));
    note(ok, inst.theta.key());
  }
  for (const auto& inst : surd_matrices()) {
    const std::size_t s = inst.theta.s(), r = inst.theta.r();
    auto rep = foliation::classify_leaves(inst.theta, kIndependenceHeight);
    auto inh = matrixdioph::inhomogeneous_independence(inst.theta, kIndependenceHeight);
    auto hom = matrixdioph::homogeneous_independence(inst.theta, kIndependenceHeight);
    testref::QMat all = inst.irrational_parts;
    all.insert(all.end(), inst.rational_part.begin(), inst.rational_part.end());
    const std::size_t inh_rank = s - testref::rank_q(inst.irrational_parts);
    const std::size_t hom_rank = s - testref::rank_q(all);
    bool ok = (rep.inhomogeneous.kind == foliation::LeafKind::Planar) == !inh.certificate.has_value();
    ok = ok && (rep.homogeneous.kind == foliation::LeafKind::Planar) == !hom.certificate.has_value();
    ok = ok && same_lattice(rep.inhomogeneous, inh, s + r) && same_lattice(rep.homogeneous, hom, s);
    ok = ok && rep.inhomogeneous.rank == inh_rank && rep.homogeneous.rank == hom_rank;
    ok = ok && rep.inhomogeneous.empirical.empty() && rep.homogeneous.empirical.empty();
    // Relations are checked exactly: theta_i . m - m_perp_i = 0 as a linear form in the oracles.
    for (const auto& v : rep.inhomogeneous.lattice)
      for (std::size_t i = 0; i < r; ++i) {
        OracleVector xs(inst.theta.rows[i]);
        xs.push_back(RealOracle::integer(1));
        IntVector coeffs(v.begin(), v.begin() + static_cast<long>(s));
        coeffs.push_back(-v[s + i]);
        ok = ok && exact_zero_combination(coeffs, xs).value_or(false);
      }
    note(ok, inst.theta.key());
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " leaf types match their certificates" +
                              first_failure};
}

// ---- criterion 8 -----------------------------------------------------------

struct RandomAlgebraic {
  IntVector poly;
  RealOracle oracle;
  IntVector brute;
};

// Random integer polynomial of degree <= 4 and height <= 20 with a real root,
// kept only when the coefficient box finds nothing of lower degree.
RandomAlgebraic random_algebraic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 4), coef(-20, 20);
  for (;;) {
    const int d = deg(rng);
    IntVector c(d + 1);
    for (auto& x : c) x = coef(rng);
    if (c[d] == 0 || c[0] == 0) continue;
    c = polyapprox::IntPolynomial::univariate(c).normalized().univariate_coefficients();
    if (height(c) > 20) continue;
    std::vector<testref::Z> zc(c.begin(), c.end());
    mpf_class root(0, 400);
    if (!testref::mpf_real_root(zc, root)) continue;
    auto brute = testref::brute_minpoly(root, static_cast<unsigned>(d), 20);
    if (brute.size() != c.size()) continue;
    for (const auto& [lo, hi] : isolate_real_roots(QPoly::from_integers(c))) {
      mpf_class mlo(lo, 400), mhi(hi, 400);
      if (mlo <= root && root <= mhi) return {c, RealOracle::algebraic(c, lo, hi), IntVector(brute.begin(), brute.end())};
    }
  }
}

Result minimal_polynomials() {
  std::mt19937_64 rng(3);
  int passed = 0;
  std::string first_failure;
  for (int t = 0; t < 50; ++t) {
    auto inst = random_algebraic(rng);
    auto got = polyapprox::minimal_polynomial(inst.oracle, 4, 20);
    bool ok = got.found() && got.polynomial->univariate_coefficients() == inst.poly &&
              inst.poly == inst.brute && got.relation.status == lattice::CertificateStatus::ExactVerified;
    if (ok) ++passed;
    else if (first_failure.empty())
      first_failure = "; first failure " + polyapprox::IntPolynomial::univariate(inst.poly).to_string();
  }
  return {passed == 50, std::to_string(passed) + "/50 match the defining and brute-force polynomials" + first_failure};
}

// ---- criterion 9 -----------------------------------------------------------

Result ideal_maximality() {
  std::string detail;
  for (const auto& [lit, m] : std::vector<std::pair<std::string, IntVector>>{{"sqrt(2)", {-2, 0, 1}}, {"phi", {-1, -1, 1}}}) {
    auto found = polyapprox::relations_up_to(RealOracle::parse(lit), 4, kIndependenceHeight);
    if (found.empty()) return {false, lit + ": no relations found"};
    auto rep = polyapprox::ideal_containment(found, polyapprox::IntPolynomial::univariate(m));
    if (!rep.all_divisible()) return {false, lit + ": " + found[*rep.counterexample].to_string() + " is not divisible"};
    detail += lit + ": " + std::to_string(found.size()) + " relations; ";
  }
  return {true, detail + "all divisible by the minimal polynomial"};
}

// ---- criterion 10 ----------------------------------------------------------

Result rigidity_regression() {
  int instances = 0, exponential = 0;
  for (const auto& c : rigidity::curated_suite()) {
    OracleVector theta;
    for (const auto& lit : c.theta) theta.push_back(RealOracle::parse(lit));
    auto rep = rigidity::conjecture_harness(c.harness, theta);
    ++instances;
    if (rep.outcome == rigidity::Outcome::CounterexampleCandidate)
      return {false, c.harness + " instance " + std::to_string(instances) + " is a counterexample candidate"};
    for (const auto& nv : rep.checks) {
      if (nv.label != "LD^Q(theta)" || !nv.verdict.holds()) continue;
      if (!rep.exponential || !rep.exponential->exact || !rep.exponential->verified)
        return {false, c.harness + " instance " + std::to_string(instances) + ": exponential certificate not exact"};
      ++exponential;
    }
  }
  return {instances == 20, std::to_string(instances) + " instances consistent; " + std::to_string(exponential) +
                               " exponential certificates verified exactly"};
}

// ---- criterion 11 ----------------------------------------------------------

Result trace_galois() {
  using namespace numfield;
  struct Instance {
    NumberField k;
    RealOracle theta;
    OApproxSequence seq;
  };
  std::vector<Instance> cases;
  const std::vector<long> ds{2, 3, 5, 6, 7};
  const std::vector<std::string> thetas{"pi", "e", "log(2)"};
  const std::vector<std::pair<long, long>> coeffs{{1, 1}, {2, -1}, {1, 3}};
  for (long d : ds)
    for (const auto& t : thetas) {
      const NumberField k = NumberField::quadratic(d);
      const RealOracle theta = RealOracle::parse(t);
      auto m = dagroups::convergent_sequence(theta, 10);
      for (const auto& [a, b] : coeffs) cases.push_back({k, theta, o_sequence_from(k, theta, {scaled(m, a), scaled(m, b)})});
    }
  for (long d : ds) {
    const NumberField k = NumberField::quadratic(d);
    const RealOracle pi = RealOracle::pi();
    cases.push_back({k, pi, half_shift_sequence(k, pi, 10)});
  }
  int passed = 0, members = 0;
  std::string first_failure;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [k, theta, seq] = cases[c];
    OVerdict before = o_membership(k, theta, seq, kMembershipTau);
    bool ok = true;
    if (before.member()) {
      ++members;
      auto t = trace_push(k, theta, seq);
      ok = ok && dagroups::membership(theta, t, {}, 2 * kMembershipTau).member();
    }
    const RatMatrix& sigma = k.automorphisms().front();
    GaloisResult g = galois_apply(k, sigma, theta, seq);
    OVerdict after = o_membership(k, theta, g.sequence, kMembershipTau);
    ok = ok && before.global == after.global;
    for (std::size_t nu = 0; nu < k.degree(); ++nu)
      for (std::size_t i = 0; i < seq.size(); ++i)
        ok = ok && overlaps(after.profiles.eps[nu][i], before.profiles.eps[g.place_map[nu]][i]);
    // IntPolynomial coefficients are integers by type; conjugate_poly throws if the exact product is not.
    polyapprox::PolySequence f = conjugate_poly(k, theta, seq);
    auto values = f.profile({theta});
    for (std::size_t i = 0; i < seq.size(); ++i) {
      PrecisionReal prod(Rational(1), 256);
      for (std::size_t nu = 0; nu < k.degree(); ++nu) prod = prod * before.profiles.eps[nu][i].abs();
      PrecisionReal excess = values[i].abs() - prod;
      ok = ok && excess.enclosure().less_than(Rational(mpq_class(kConjugateSlack)));
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = "; first failure at case " + std::to_string(c + 1);
  }
  return {passed == static_cast<int>(cases.size()) && members >= 45,
          std::to_string(passed) + "/" + std::to_string(cases.size()) + " sequences (" + std::to_string(members) +
              " global members)" + first_failure};
}

// ---- criterion 12 ----------------------------------------------------------

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

std::string run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(DIOPHLAB_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return out + "\n<exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + ">";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "diophlab-acceptance";
  std::filesystem::create_directories(dir);
  const std::string svg = (dir / "orbit.svg").string(), csv = (dir / "orbit.csv").string();
  const std::vector<std::vector<std::string>> matrix{
      {"cf", "--theta", "phi", "-k", "12"},
      {"group", "--theta", "3/7", "--seq", "[1,2,3]"},
      {"group", "--theta", "phi", "--op", "membership"},
      {"group", "--theta", "sqrt(2)", "--op", "hat", "--stages", "4"},
      {"group", "--theta", "sqrt(2)", "--op", "witness"},
      {"group", "--theta", "phi", "--op", "dual"},
      {"group", "--theta", "pi", "--op", "circle"},
      {"group", "--theta", "phi", "--op", "pair", "--convergents", "5"},
      {"group", "--theta", "phi", "--op", "combine", "--seq", "[1,2,3]", "--seq2", "[1,1,1]", "--c1", "2", "--c2", "-1"},
      {"simul", "--theta", "sqrt(2),sqrt(3)", "--Q", "1000"},
      {"simul", "--matrix", "[[sqrt(2)],[sqrt(3)]]"},
      {"indep", "homogeneous", "--matrix", "[[1/2,1/3]]"},
      {"indep", "inhomogeneous", "--matrix", "[[sqrt(2),sub(1,sqrt(2))]]"},
      {"indep", "rows", "--matrix", "[[sqrt(2)],[sqrt(2)]]", "--samples", "500"},
      {"dirichlet-k", "--field", "Q(sqrt 2)", "--theta", "pi", "--eta", "3+3w"},
      {"ofield", "o-membership", "--field", "Q(sqrt 2)", "--theta", "pi"},
      {"ofield", "o-membership", "--field", "Q(sqrt 2)", "--theta", "pi", "--construct", "half-shift"},
      {"ofield", "trace", "--field", "Q(sqrt 5)", "--theta", "e"},
      {"ofield", "galois", "--field", "maxreal7", "--theta", "pi"},
      {"ofield", "conjpoly", "--field", "Q(sqrt 2)", "--theta", "pi"},
      {"ofield", "krational", "--field", "Q(sqrt 2)", "--theta", "sqrt(2)"},
      {"ofield", "cleardenom", "--minpoly", "[-1,0,2]"},
      {"minpoly", "--theta", "surd(1,1,2,5)"},
      {"algdep", "--theta", "e,pow(e,2)", "--degree", "2"},
      {"foliate", "classify", "--matrix", "[[phi]]"},
      {"foliate", "minimal", "--matrix", "[[1/2]]", "--samples", "200"},
      {"foliate", "orbit", "--matrix", "[[phi]]"},
      {"foliate", "tower", "--theta", "sqrt(2)", "--points", "300"},
      {"foliate", "render", "--matrix", "[[phi]]", "--out", svg},
      {"foliate", "render", "--matrix", "[[sqrt(2),1/3]]", "--format", "csv", "--points", "200", "--out", csv},
      {"rigidity", "ld", "--theta", "1,sqrt(2)", "--field", "Q(sqrt 2)"},
      {"rigidity", "ad", "--theta", "pi,e", "--degree", "3"},
      {"rigidity", "pullback", "--theta", "1,2", "--degree", "3"},
      {"rigidity", "harness", "--name", "baker", "--theta", "log(2),log(3),log(6)"},
      {"rigidity", "harness", "--curated"},
      {"--pretty", "cf", "--theta", "sqrt(2)"},
  };
  // Error paths are part of the matrix too; each must exit with its status.
  const std::vector<std::pair<std::vector<std::string>, int>> failing{
      {{"group", "--theta", "1/2", "--op", "witness"}, 3},
      {{"cf", "--theta", "not-a-number"}, 2},
      {{"nonsense"}, 2},
  };
  auto ends_with = [](const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
  };
  auto pass = [&] {
    std::vector<std::string> outs;
    std::string bad;
    for (const auto& args : matrix) {
      outs.push_back(run_cli(args));
      if (!ends_with(outs.back(), "<exit 0>") && bad.empty()) bad = args[0] + " " + args[1] + " did not exit 0";
      if (args[1] == "render") {
        outs.push_back(slurp(args.back()));
        if (outs.back().empty() && bad.empty()) bad = "render wrote nothing to " + args.back();
      }
    }
    for (const auto& [args, code] : failing) {
      outs.push_back(run_cli(args));
      if (!ends_with(outs.back(), "<exit " + std::to_string(code) + ">") && bad.empty())
        bad = args[0] + " should exit " + std::to_string(code);
    }
    return std::make_pair(outs, bad);
  };
  auto [first, bad1] = pass();
  auto [second, bad2] = pass();
  std::filesystem::remove_all(dir);
  if (!bad1.empty() || !bad2.empty()) return {false, bad1.empty() ? bad2 : bad1};
  for (std::size_t i = 0; i < first.size(); ++i)
    if (first[i] != second[i]) return {false, "output " + std::to_string(i + 1) + " differs between runs"};
  return {true, std::to_string(matrix.size() + failing.size()) + " commands and 2 rendered files byte-identical across two runs"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden-mean pipeline", 1, golden_mean},
      {2, "rational ideal law", 10, rational_ideal_law},
      {3, "scaling witness", 10, scaling_witnesses},
      {4, "hat generator", 30, hat_generator},
      {5, "K-Dirichlet", 120, k_dirichlet_random},
      {6, "independence oracle equivalence", 30, independence_equivalence},
      {7, "dictionary consistency", 30, dictionary_consistency},
      {8, "minimal polynomial recovery", 120, minimal_polynomials},
      {9, "ideal maximality", 5, ideal_maximality},
      {10, "rigidity regression", 120, rigidity_regression},
      {11, "trace and Galois", 30, trace_galois},
      {12, "determinism", 300, determinism},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && secs > c.limit_seconds) {
      r.pass = false;
      r.detail += "; over the time limit";
    }
    const bool known = kKnownUnattainable.count(c.id) > 0;
    std::printf("%s %2d %s (%.2fs / %.0fs): %s%s\n", r.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.limit_seconds, r.detail.c_str(), !r.pass && known ? " [known unattainable]" : "");
    std::fflush(stdout);
    if (!r.pass && !known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
