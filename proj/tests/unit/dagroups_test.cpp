#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "diophlab/core/error.hpp"
#include "diophlab/dagroups/dagroups.hpp"
#include "support/test_oracles.hpp"

using namespace diophlab;
using namespace diophlab::dagroups;

namespace {

constexpr unsigned kDigits = 80;

// sqrt(n) to 80 decimals as an exact rational, independent of the library.
Rational ref_sqrt(long n) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, kDigits);
  return Rational(testref::decimal_sqrt(n, kDigits), scale);
}

Rational ref_phi() { return (1 + ref_sqrt(5)) / 2; }

double ref_dist(const Rational& x) {
  Integer f = diophlab::floor(x);
  Rational fr = x - f;
  return std::min(fr.get_d(), 1.0 - fr.get_d());
}

IntVector fibonacci(std::size_t n, std::size_t offset = 1) {
  IntVector f{0, 1};
  while (f.size() < n + offset + 1) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return IntVector(f.begin() + static_cast<long>(offset), f.begin() + static_cast<long>(offset + n));
}

RealOracle phi() { return RealOracle::parse("phi"); }

}  // namespace

TEST(DaGroups, ConvergentExamples) {
  auto cf = convergents(phi(), 6);
  std::vector<long> qs;
  for (auto& [p, q] : cf.convergents) qs.push_back(q.get_si());
  EXPECT_EQ(qs, (std::vector<long>{1, 1, 2, 3, 5, 8}));

  auto r = convergents(RealOracle::rational(Rational(3, 7)), 10);
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.convergents.back(), std::make_pair(Integer(3), Integer(7)));

  auto s = convergents(RealOracle::sqrt(2), 5);
  std::vector<std::pair<long, long>> got;
  for (auto& [p, q] : s.convergents) got.emplace_back(p.get_si(), q.get_si());
  EXPECT_EQ(got, (std::vector<std::pair<long, long>>{{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}}));

  // Best approximations of the second kind over q <= 29, by brute force.
  const double r2 = std::sqrt(2.0);
  double best = 1e9;
  std::vector<std::pair<long, long>> brute;
  for (long q = 1; q <= 29; ++q) {
    long p = std::lround(q * r2);
    double err = std::fabs(q * r2 - p);
    if (err < best) {
      best = err;
      brute.emplace_back(p, q);
    }
  }
  EXPECT_EQ(brute, got);
}

TEST(DaGroups, FibonacciErrorsMatchExactGoldenPowers) {
  const Rational conj = (ref_sqrt(5) - 1) / 2;  // phi^-1
  // Constructed from convergents: duals are F_{i+1} for every i >= 1.
  ApproxSequence built = convergent_sequence(phi(), 12);
  ErrorProfile prof = error_term(phi(), built);
  IntVector next = fibonacci(12, 2);
  Rational pw = 1;
  for (std::size_t i = 0; i < 12; ++i) {
    pw *= conj;
    EXPECT_EQ(prof.duals[i], Rational(next[i]));
    // |F_{i+1} - phi F_i| in Q(sqrt 5) with an 80-digit root.
    Rational exact = abs(Rational(next[i] - ref_phi() * Rational(built.entries[i])));
    EXPECT_LT(std::fabs(exact.get_d() - pw.get_d()), 1e-40);
    EXPECT_LT(std::fabs(prof.epsilons[i].abs().mid_double() - pw.get_d()), 1e-12);
  }
  ASSERT_TRUE(prof.fit.has_value());
  EXPECT_NEAR(prof.fit->lambda, std::log2((1 + std::sqrt(5.0)) / 2), 1e-9);

  // Bare entries use nearest-integer duals. At F_1 = 1 the nearest integer
  // to phi is 2, not F_2, so the law is checked from F_2 onwards.
  ApproxSequence bare = user_sequence(fibonacci(12, 2));
  ErrorProfile p2 = error_term(phi(), bare);
  IntVector next2 = fibonacci(12, 3);
  pw = conj;
  for (std::size_t i = 0; i < 12; ++i) {
    pw *= conj;
    EXPECT_EQ(p2.duals[i], Rational(next2[i]));
    EXPECT_LT(std::fabs(p2.epsilons[i].abs().mid_double() - pw.get_d()), 1e-12);
  }
}

TEST(DaGroups, ErrorTermExamples) {
  auto r = error_term(RealOracle::rational(Rational(3, 7)), user_sequence({7, 14, 21}));
  for (auto& e : r.epsilons) EXPECT_TRUE(e.certainly_zero());
  EXPECT_EQ(r.duals, (RatVector{3, 6, 9}));

  auto s = error_term(RealOracle::sqrt(2), user_sequence({1, 2, 3}));
  EXPECT_FALSE(s.fit.has_value());
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(std::fabs(s.epsilons[i].mid_double()), ref_dist(Rational(i + 1) * ref_sqrt(2)), 1e-15);
}

TEST(DaGroups, MembershipExamples) {
  IntVector sevens{7, 14, 21, 28, 35};
  auto a = membership(RealOracle::rational(Rational(3, 7)), user_sequence(sevens), NumeratorConstraint::integers(), 1e-3);
  EXPECT_EQ(a.status, MembershipStatus::CertifiedMember);
  EXPECT_EQ(*a.duals, (RatVector{3, 6, 9, 12, 15}));

  auto fib = convergent_sequence(phi(), 12);
  EXPECT_EQ(fib.entries, fibonacci(12));
  auto b = membership(phi(), fib, NumeratorConstraint::integers(), 1e-3);
  EXPECT_EQ(b.status, MembershipStatus::CertifiedMember);

  auto c = membership(RealOracle::sqrt(2), user_sequence({1, 2, 3, 4, 5}), NumeratorConstraint::integers(), 0.01);
  EXPECT_EQ(c.status, MembershipStatus::NotMember);
  EXPECT_EQ(c.witness, 1u);

  // Bare Fibonacci entries without the certificate are only empirical.
  auto d = membership(phi(), user_sequence(fibonacci(20)), NumeratorConstraint::integers(), 1e-3);
  EXPECT_EQ(d.status, MembershipStatus::EmpiricalMember);
  EXPECT_THROW(membership(phi(), fib, NumeratorConstraint::integers(), 0.0), Error);
}

TEST(DaGroups, RationalCharacterizationExhaustive) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-100, 100);
  for (auto [a, b] : std::vector<std::pair<long, long>>{{3, 7}, {1, 2}, {-5, 6}, {2, 9}, {0, 1}}) {
    RealOracle t = RealOracle::rational(Rational(a, b));
    for (long x = -100; x <= 100; ++x) {
      IntVector e{x, d(rng), x * b};
      bool divides = true;
      for (auto& z : e) divides = divides && (z % b == 0);
      auto v = membership(t, user_sequence(e), NumeratorConstraint::integers(), 1e-3);
      EXPECT_EQ(v.status == MembershipStatus::CertifiedMember, divides) << a << "/" << b << " " << x;
      if (!divides) EXPECT_EQ(v.status, MembershipStatus::NotMember);
    }
  }
}

TEST(DaGroups, NumeratorConstraints) {
  RealOracle t = RealOracle::rational(Rational(1, 3));
  // Duals in (1/2)Z: 3*(1/3) = 1 works, 1*(1/3) is not within 1/2 Z.
  auto a = membership(t, user_sequence({3, 6, 9}), NumeratorConstraint::inverted_scale(2), 1e-3);
  EXPECT_EQ(a.status, MembershipStatus::CertifiedMember);
  auto b = membership(t, user_sequence({3, 6, 9}), NumeratorConstraint::divisible_by_all(3), 1e-3);
  EXPECT_EQ(b.status, MembershipStatus::NotMember);
  auto c = membership(t, user_sequence({18, 36, 54}), NumeratorConstraint::divisible_by_all(3), 1e-3);
  EXPECT_EQ(c.status, MembershipStatus::CertifiedMember);
  EXPECT_EQ(*c.duals, (RatVector{6, 12, 18}));
  auto d = membership(t, user_sequence({3, 5, 9}), NumeratorConstraint::scaled_ideal(3), 1e-3);
  EXPECT_EQ(d.status, MembershipStatus::NotMember);
  EXPECT_EQ(d.witness, 2u);
}

TEST(DaGroups, CombineLinearityAndClosure) {
  auto fib = convergent_sequence(phi(), 12);
  auto zero = combine(fib, fib, 1, -1);
  for (auto& z : zero.entries) EXPECT_EQ(z, 0);
  EXPECT_EQ(membership(phi(), zero, NumeratorConstraint::integers(), 1e-3).status, MembershipStatus::CertifiedMember);

  auto shifted = fib;
  shifted.entries = fibonacci(12, 2);
  shifted.duals = fibonacci(12, 3);
  auto sum = combine(fib, shifted, 1, 1);
  EXPECT_NE(membership(phi(), sum, NumeratorConstraint::integers(), 1e-3).status, MembershipStatus::NotMember);

  auto lin = combine(fib, shifted, 2, 3);
  auto ea = error_term(phi(), fib), eb = error_term(phi(), shifted), ec = error_term(phi(), lin);
  for (std::size_t i = 0; i < 12; ++i) {
    double expect = 2 * ea.epsilons[i].mid_double() + 3 * eb.epsilons[i].mid_double();
    EXPECT_NEAR(ec.epsilons[i].mid_double(), expect, 1e-15);
  }
  EXPECT_EQ(membership(phi(), lin, NumeratorConstraint::integers(), 1e-3).status, MembershipStatus::CertifiedMember);
  EXPECT_THROW(combine(fib, user_sequence({1, 2, 3}), 1, 1), Error);
  try {
    combine(fib, user_sequence({1, 2, 3}), 1, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(DaGroups, DualIsAnInvolution) {
  auto fib = convergent_sequence(phi(), 12);
  auto d = dual(phi(), fib);
  EXPECT_EQ(d.entries, fibonacci(12, 2));
  EXPECT_EQ(*d.theta, phi().reciprocal().literal());
  auto v = membership(phi().reciprocal(), d, NumeratorConstraint::integers(), 1e-3);
  EXPECT_EQ(v.status, MembershipStatus::CertifiedMember);
  ASSERT_EQ(d.certificates.size(), 1u);
  EXPECT_NEAR(d.certificates[0].C * ((1 + std::sqrt(5.0)) / 2), fib.certificates[0].C, 1e-9);

  auto dd = dual(phi().reciprocal(), d);
  EXPECT_EQ(dd.entries, fib.entries);
  EXPECT_EQ(*dd.duals, *fib.duals);
  EXPECT_EQ(*dd.theta, *fib.theta);

  auto r = dual(RealOracle::rational(Rational(3, 7)), user_sequence({7, 14, 21}));
  EXPECT_EQ(r.entries, (IntVector{3, 6, 9}));
  EXPECT_EQ(membership(RealOracle::rational(Rational(7, 3)), r, NumeratorConstraint::integers(), 1e-3).status,
            MembershipStatus::CertifiedMember);
  EXPECT_THROW(dual(RealOracle::rational(0), fib), Error);
}

TEST(DaGroups, ScalingWitnessMatchesLinearSearch) {
  auto seq = convergent_sequence(RealOracle::sqrt(2), 10);
  auto w = scaling_witness(RealOracle::sqrt(2), seq);
  ASSERT_EQ(w.size(), 10u);
  const Rational s2 = ref_sqrt(2);
  for (std::size_t i = 0; i < 10; ++i) {
    long expect = 0;
    for (long N = 1; N <= 10000 && !expect; ++N)
      if (ref_dist(Rational(N) * Rational(seq.entries[i]) * s2) > 0.25) expect = N;
    EXPECT_EQ(w[i], expect) << i;
  }
  EXPECT_EQ(scaling_witness(phi(), convergent_sequence(phi(), 12)).size(), 12u);
  try {
    scaling_witness(RealOracle::rational(Rational(3, 7)), user_sequence({7, 14, 21}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RationalTheta);
  }
  Config tight;
  tight.witness_bound = 3;
  try {
    scaling_witness(RealOracle::sqrt(2), seq, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WitnessNotFound);
  }
}

TEST(DaGroups, CirclePartExamples) {
  auto fib = convergent_sequence(phi(), 12);
  auto a = circle_part(phi(), fib);
  ASSERT_TRUE(a.has_limit);
  EXPECT_TRUE(a.limit->contains(Rational(0)));

  auto b = circle_part(phi(), user_sequence(IntVector(12, 1)));
  ASSERT_TRUE(b.has_limit);
  EXPECT_NEAR(b.limit->mid_double() + (b.limit->mid_double() < 0 ? 1 : 0), 0.6180339887, 1e-9);

  auto conv = convergent_sequence(RealOracle::sqrt(2), 12);
  IntVector shifted;
  for (auto& q : conv.entries) shifted.push_back(q + 1);
  auto c = circle_part(RealOracle::sqrt(2), user_sequence(shifted));
  ASSERT_TRUE(c.has_limit);
  EXPECT_NEAR(c.limit->mid_double(), 0.41421356, 1e-3);

  // Additivity on combine, modulo 1.
  auto sum = circle_part(RealOracle::sqrt(2), combine(user_sequence(shifted), user_sequence(IntVector(12, 1)), 1, 1));
  ASSERT_TRUE(sum.has_limit);
  double expect = c.limit->mid_double() + (std::sqrt(2.0) - 1);
  double got = sum.limit->mid_double();
  double diff = std::fabs(expect - got);
  EXPECT_LT(std::min(diff, std::fabs(diff - 1)), 1e-3 + c.limit->width_double() + sum.limit->width_double());
}

TEST(DaGroups, HatElementStages) {
  auto hat = hat_element(RealOracle::sqrt(2), 4);
  ASSERT_EQ(hat.sequence.size(), 4u);
  const Rational s2 = ref_sqrt(2);
  for (const auto& st : hat.stages) {
    for (long m = 2; m <= 4; ++m) EXPECT_EQ(Integer(st.entry % m), 1);
    Rational m = Rational(st.multiplier);
    // Independent check of the stage inequality and the looser 1/k^2 form.
    double d = ref_dist(s2 / m + Rational(st.n) * s2);
    EXPECT_LT(d, st.delta.get_d());
    EXPECT_LT(d, 1.0 / (st.k * st.k));
  }
  // Stage 1 by brute force over |n| <= q_max: the minimal solution does not beat the bound trivially.
  const Rational m0 = Rational(hat.stages[0].multiplier);
  long brute = -1;
  for (long n = 0; n <= 100000 && brute < 0; ++n)
    if (ref_dist(s2 / m0 + Rational(n) * s2) < hat.stages[0].delta.get_d()) brute = n;
  EXPECT_GE(brute, 0);
  EXPECT_LE(Integer(brute), hat.stages[0].n);

  for (unsigned q = 1; q <= 4; ++q) {
    auto v = membership(RealOracle::sqrt(2).scaled(q), hat.sequence, NumeratorConstraint::integers(), 1e-3);
    EXPECT_NE(v.status, MembershipStatus::NotMember) << q;
  }
  EXPECT_THROW(hat_element(RealOracle::rational(Rational(1, 2)), 3), Error);
  EXPECT_THROW(hat_element(RealOracle::sqrt(2), 7), Error);
}

TEST(DaGroups, PairForm) {
  auto fib = user_sequence(fibonacci(8, 2));
  auto p = pair_form(phi(), fib);
  IntVector next = fibonacci(8, 3);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(p[i].first, fib.entries[i]);
    EXPECT_EQ(p[i].second, next[i]);
  }
  auto r = pair_form(RealOracle::rational(Rational(3, 7)), user_sequence({7, 14, 21}));
  EXPECT_EQ(r[2], std::make_pair(Integer(21), Integer(9)));
}

TEST(DaGroups, ParseSequence) {
  EXPECT_EQ(parse_sequence("[\"7\",\"14\",21]").entries, (IntVector{7, 14, 21}));
  EXPECT_THROW(parse_sequence("[1.5]"), Error);
  EXPECT_THROW(parse_sequence("{}"), Error);
}
