#include <gtest/gtest.h>

#include <random>

#include "diophlab/core/error.hpp"
#include "diophlab/matrixdioph/matrixdioph.hpp"
#include "support/test_oracles.hpp"

using namespace diophlab;
using namespace diophlab::matrixdioph;
using dagroups::MembershipStatus;

namespace {

RealMatrix random_rational(std::mt19937_64& rng, testref::QMat& exact) {
  std::uniform_int_distribution<int> dim(1, 3), num(-20, 20), den(1, 20), sparse(0, 3);
  const int r = dim(rng), s = dim(rng);
  OracleMatrix m(r);
  exact.assign(r, std::vector<testref::Q>(s));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) {
      Rational q = sparse(rng) == 0 ? Rational(0) : Rational(num(rng), den(rng));
      q.canonicalize();
      exact[i][j] = q;
      m[i].push_back(RealOracle::rational(q));
    }
  return RealMatrix::from_rows(m);
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

}  // namespace

TEST(MatrixDioph, MembershipExamples) {
  auto col = RealMatrix::parse("[[sqrt(2)],[sqrt(3)]]");
  auto seq = simultaneous_sequence(col, 8);
  auto v = vector_membership(col, seq, false, 1e-3);
  EXPECT_EQ(v.status, MembershipStatus::CertifiedMember);

  auto row = RealMatrix::parse("[[sqrt(2), mul(2,sqrt(2))]]");
  VectorApproxSequence h;
  for (long i = 1; i <= 6; ++i) h.entries.push_back({2 * i, -i});
  auto hv = vector_membership(row, h, true, 1e-3);
  EXPECT_EQ(hv.status, MembershipStatus::CertifiedMember);
  for (auto& e : vector_error_term(row, h, true).epsilons) EXPECT_TRUE(e[0].certainly_zero());

  auto row2 = RealMatrix::parse("[[sqrt(2), sqrt(3)]]");
  VectorApproxSequence c;
  for (int i = 0; i < 5; ++i) c.entries.push_back({1, 0});
  auto nv = vector_membership(row2, c, false, 0.01);
  EXPECT_EQ(nv.status, MembershipStatus::NotMember);
  EXPECT_EQ(nv.witness, 1u);

  VectorApproxSequence bad;
  bad.entries.push_back({1, 2, 3});
  EXPECT_THROW(vector_membership(row2, bad, false, 0.01), Error);
}

TEST(MatrixDioph, IndependenceExamples) {
  auto a = homogeneous_independence(RealMatrix::parse("[[sqrt(2), mul(2,sqrt(2))]]"), 10000);
  EXPECT_EQ(a.verdict, Independence::Dependent);
  EXPECT_EQ(a.certificate->relation, (IntVector{2, -1}));
  EXPECT_EQ(a.certificate->status, lattice::CertificateStatus::ExactVerified);

  auto b = homogeneous_independence(RealMatrix::parse("[[sqrt(2), sqrt(3)]]"), 10000);
  EXPECT_NE(b.verdict, Independence::Dependent);
  EXPECT_EQ(homogeneous_independence(RealMatrix::parse("[[1,0],[0,1]]"), 10000).verdict, Independence::Independent);

  auto c = inhomogeneous_independence(RealMatrix::parse("[[sqrt(2), sub(1,sqrt(2))]]"), 10000);
  ASSERT_EQ(c.verdict, Independence::Dependent);
  EXPECT_EQ(c.m, (IntVector{1, 1}));
  EXPECT_EQ(c.m_perp, (IntVector{1}));
  auto d = inhomogeneous_independence(RealMatrix::parse("[[1/2]]"), 10000);
  ASSERT_EQ(d.verdict, Independence::Dependent);
  EXPECT_EQ(d.m, (IntVector{2}));
  EXPECT_EQ(d.m_perp, (IntVector{1}));
  EXPECT_NE(inhomogeneous_independence(RealMatrix::parse("[[phi]]"), 10000).verdict, Independence::Dependent);
  // A non-exact entry falls back to the bounded lattice search.
  auto e = inhomogeneous_independence(RealMatrix::parse("[[e]]"), 10000);
  EXPECT_EQ(e.verdict, Independence::IndependentUpTo);
}

TEST(MatrixDioph, RationalOracleEquivalence) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    testref::QMat q;
    RealMatrix m = random_rational(rng, q);
    const std::size_t s = m.s();
    bool dep = testref::rank_bareiss(cleared(q)) < s;
    auto h = homogeneous_independence(m, 1000);
    EXPECT_EQ(h.verdict == Independence::Dependent, dep) << m.key();
    if (!dep) EXPECT_EQ(h.verdict, Independence::Independent);
    auto inh = inhomogeneous_independence(m, 1000);
    EXPECT_EQ(inh.verdict, Independence::Dependent) << m.key();
  }
}

TEST(MatrixDioph, TorusClosureExamples) {
  auto a = torus_closure(RealMatrix::parse("[[1/2]]"), 1000, 200);
  EXPECT_EQ(a.kind, ClosureKind::FiniteGroup);
  EXPECT_EQ(a.order, 2);
  EXPECT_TRUE(a.sampling_consistent);

  auto b = torus_closure(RealMatrix::parse("[[sqrt(2)]]"), 1000, 1000);
  EXPECT_EQ(b.kind, ClosureKind::FullTorus);
  EXPECT_TRUE(b.sampling_consistent);

  auto c = torus_closure(RealMatrix::parse("[[sqrt(2)],[sqrt(2)]]"), 1000, 500);
  EXPECT_EQ(c.kind, ClosureKind::SubtorusCoset);
  EXPECT_EQ(c.dimension, 1u);
  ASSERT_EQ(c.relations.size(), 1u);
  EXPECT_EQ(c.relations[0], (IntVector{1, -1, 0}));
  EXPECT_TRUE(c.sampling_consistent);
}

TEST(MatrixDioph, FiniteClosureOrderMatchesOrbitEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 2), num(-6, 6), den(1, 6);
  for (int t = 0; t < 40; ++t) {
    const int r = dim(rng), s = dim(rng);
    testref::QMat q(r, std::vector<testref::Q>(s));
    OracleMatrix m(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < s; ++j) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        q[i][j] = x;
        m[i].push_back(RealOracle::rational(x));
      }
    auto c = torus_closure(RealMatrix::from_rows(m), 1000, 50);
    ASSERT_EQ(c.kind, ClosureKind::FiniteGroup);
    EXPECT_EQ(c.order, Integer(testref::rational_orbit_order(q)));
    EXPECT_TRUE(c.sampling_consistent);
  }
}
