#include <gtest/gtest.h>

#include "diophlab/core/error.hpp"
#include "diophlab/rigidity/rigidity.hpp"

using namespace diophlab;
using namespace diophlab::rigidity;

namespace {

OracleVector v(const std::vector<std::string>& xs) { return parse_oracle_list(xs); }
const numfield::NumberField kQ = numfield::NumberField::rationals();
const numfield::NumberField kQ2 = numfield::NumberField::quadratic(2);

polyapprox::IntPolynomial poly(const std::string& json) { return polyapprox::IntPolynomial::parse_json(json); }

}  // namespace

TEST(LdCheck, Examples) {
  RelationVerdict a = ld_check(v({"1", "2"}), kQ, 1000);
  ASSERT_TRUE(a.holds());
  EXPECT_EQ(a.certificate, lattice::CertificateStatus::ExactVerified);
  EXPECT_EQ(a.coefficient_text, (std::vector<std::string>{"2", "-1"}));

  RelationVerdict logs = ld_check(v({"log(2)", "log(3)"}), kQ, 10000);
  EXPECT_EQ(logs.status, VerdictStatus::NotDetectedUpTo);

  RelationVerdict k = ld_check(v({"1", "sqrt(2)"}), kQ2, 100);
  ASSERT_TRUE(k.holds());
  // c_1 + c_2 sqrt 2 = 0 forces c_1 = -sqrt 2 c_2, proportional to (sqrt 2, -1).
  const auto c1 = kQ2.place_oracle(k.coefficients[0], 0).eval(256);
  const auto c2 = kQ2.place_oracle(k.coefficients[1], 0).eval(256);
  EXPECT_TRUE((c1 + c2 * RealOracle::sqrt(2).eval(256)).contains_zero());
  EXPECT_TRUE(c2.certainly_nonzero());

  EXPECT_FALSE(ld_check(v({"1", "sqrt(2)"}), kQ, 10000).holds());
  EXPECT_THROW(ld_check(v({"1"}), kQ, 10), Error);
}

TEST(AdCheck, Examples) {
  RelationVerdict ee = ad_check(v({"e", "pow(e,2)"}), 3, 1000);
  ASSERT_TRUE(ee.holds());
  EXPECT_EQ(*ee.polynomial, poly(R"({"2,0": 1, "0,1": -1})"));

  EXPECT_EQ(ad_check(v({"pi", "e"}), 3, 1000).status, VerdictStatus::NotDetectedUpTo);

  RelationVerdict alg = ad_check(v({"sqrt(2)", "pi"}), 3, 1000);
  ASSERT_TRUE(alg.holds());
  EXPECT_EQ(alg.certificate, lattice::CertificateStatus::ExactVerified);
  EXPECT_EQ(*alg.polynomial, poly(R"({"2,0": 1, "0,0": -2})"));

  // The shortcut certificate vanishes at the coordinate it names.
  for (const std::string lit : {"3/7", "phi", "surd(1,2,3,5)", "alg([-2,0,0,1];[1,2])"}) {
    RelationVerdict r = ad_check(v({"pi", lit}), 2, 10);
    ASSERT_TRUE(r.holds()) << lit;
    EXPECT_TRUE(polyapprox::poly_error(v({"pi", lit}), *r.polynomial, 256).contains_zero()) << lit;
  }
}

TEST(Monotonicity, LdQImpliesLdKImpliesAd) {
  const std::vector<std::vector<std::string>> instances = {
      {"1", "2"}, {"log(2)", "log(8)"}, {"log(2)", "log(3)", "log(6)"}, {"pi", "scale(3/2,pi)"},
      {"e", "add(e,scale(2,e))"}, {"log(3/2)", "log(2)", "log(3)"}};
  for (const auto& lits : instances) {
    OracleVector th = v(lits);
    RelationVerdict q = ld_check(th, kQ, 1000);
    ASSERT_TRUE(q.holds()) << lits[0];
    EXPECT_TRUE(ld_check(th, kQ2, 1000).holds()) << lits[0];
    EXPECT_TRUE(ad_check(th, 1, 1000).holds()) << lits[0];
    // Exponentiating the Q-relation gives a multiplicative one.
    if (q.certificate == lattice::CertificateStatus::ExactVerified) {
      IntVector rel;
      for (const auto& c : q.coefficients) rel.push_back(c.coords[0].get_num());
      ExponentialCertificate ec = ld_to_ad(th, rel);
      EXPECT_TRUE(ec.exact) << lits[0];
      EXPECT_TRUE(ec.verified) << lits[0];
      EXPECT_FALSE(ec.polynomial.is_zero());
    }
  }
  // Over Q(sqrt 2) but not over Q.
  OracleVector th = v({"pi", "mul(sqrt(2),pi)"});
  EXPECT_FALSE(ld_check(th, kQ, 1000).holds());
  EXPECT_TRUE(ld_check(th, kQ2, 1000).holds());
  EXPECT_TRUE(ad_check(th, 2, 1000).holds());
}

TEST(LdToAd, ExactOnLogarithms) {
  ExponentialCertificate ec = ld_to_ad(v({"log(2)", "log(3)", "log(6)"}), {1, 1, -1});
  EXPECT_TRUE(ec.exact);
  EXPECT_EQ(ec.polynomial, poly(R"({"1,1,0": 1, "0,0,1": -1})"));
  ExponentialCertificate wrong = ld_to_ad(v({"1", "sqrt(2)"}), {1, -1});
  EXPECT_FALSE(wrong.verified);
  EXPECT_THROW(ld_to_ad(v({"1", "2"}), {0, 0}), Error);
}

TEST(GraphPullback, Examples) {
  PullbackReport one_two = graph_pullback(v({"1", "2"}), 3, 1000);
  EXPECT_EQ(one_two.projections.size(), 6u);
  EXPECT_TRUE(one_two.holds);
  for (std::size_t k = 1; k < one_two.projections.size(); ++k)
    EXPECT_LT(std::tie(one_two.projections[k - 1].dom, one_two.projections[k - 1].ran),
              std::tie(one_two.projections[k].dom, one_two.projections[k].ran));

  PullbackReport root2 = graph_pullback(v({"1", "sqrt(2)"}), 3, 1000);
  EXPECT_FALSE(root2.holds);
  ASSERT_EQ(root2.not_detected.size(), 1u);
  const ProjectionReport& ran = root2.projections[root2.not_detected[0]];
  EXPECT_TRUE(ran.dom.empty());
  EXPECT_EQ(ran.ran, (std::vector<std::size_t>{1, 2}));

  PullbackReport logs = graph_pullback(v({"log(2)", "log(3)"}), 3, 1000);
  EXPECT_FALSE(logs.holds);
  bool dom_missing = false;
  for (std::size_t k : logs.not_detected) dom_missing |= logs.projections[k].ran.empty();
  EXPECT_TRUE(dom_missing);

  EXPECT_EQ(graph_pullback(v({"1", "2", "3"}), 1, 10).projections.size(), 20u);
  try {
    graph_pullback(v({"1", "2", "3", "4", "5"}), 1, 10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(GraphPullback, IdentityReducesToAd) {
  const std::vector<std::vector<std::string>> instances = {
      {"pi", "e"}, {"1", "pi"}, {"e", "pow(e,2)"}, {"pi", "log(2)"}, {"log(2)", "log(3)", "pi"}};
  for (const auto& lits : instances) {
    OracleVector th = v(lits);
    PullbackReport id = graph_pullback(th, 2, 100, GraphFunction::Identity);
    EXPECT_EQ(id.holds, ad_check(th, 2, 100).holds()) << lits[0];
  }
}

TEST(GraphPullback, AlgebraicFilter) {
  PullbackReport f = graph_pullback(v({"1", "sqrt(2)"}), 3, 1000, GraphFunction::Exp, true);
  PullbackReport plain = graph_pullback(v({"1", "sqrt(2)"}), 3, 1000);
  ASSERT_EQ(f.projections.size(), plain.projections.size());
  for (std::size_t k = 0; k < f.projections.size(); ++k) {
    EXPECT_EQ(f.projections[k].verdict.holds(), plain.projections[k].verdict.holds());
    const auto& p = f.projections[k];
    bool overlap = false;
    for (auto i : p.dom) overlap |= std::find(p.ran.begin(), p.ran.end(), i) != p.ran.end();
    EXPECT_EQ(p.filtered, overlap);
  }
  EXPECT_THROW(graph_pullback(v({"pi", "1"}), 3, 1000, GraphFunction::Exp, true), Error);
}

TEST(Harness, Examples) {
  HarnessReport baker = conjecture_harness("baker", v({"log(2)", "log(3)", "log(6)"}));
  EXPECT_EQ(baker.outcome, Outcome::VacuouslyConsistent);
  ASSERT_TRUE(baker.checks[0].verdict.holds());
  EXPECT_EQ(baker.checks[0].verdict.coefficient_text, (std::vector<std::string>{"1", "1", "-1"}));
  ASSERT_TRUE(baker.exponential.has_value());
  EXPECT_TRUE(baker.exponential->exact);

  HarnessReport lw = conjecture_harness("lw", v({"1", "sqrt(2)"}));
  EXPECT_EQ(lw.outcome, Outcome::Consistent);
  EXPECT_EQ(conjecture_harness("schanuel", v({"1", "2"})).outcome, Outcome::Consistent);

  for (auto [name, lits] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"baker", {"pi", "log(2)"}}, {"lw", {"pi", "1"}}, {"logconj", {"1", "log(2)"}}}) {
    try {
      conjecture_harness(name, v(lits));
      ADD_FAILURE() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::WrongInstanceShape) << name;
    }
  }
  EXPECT_THROW(conjecture_harness("fermat", v({"1", "2"})), Error);
}

TEST(Harness, CuratedSuite) {
  const auto& suite = curated_suite();
  ASSERT_EQ(suite.size(), 20u);
  for (const auto& inst : suite) {
    HarnessReport r = conjecture_harness(inst.harness, parse_oracle_list(inst.theta));
    EXPECT_NE(r.outcome, Outcome::CounterexampleCandidate) << inst.harness << " " << inst.theta[0];
    EXPECT_EQ(r.outcome, inst.expected) << inst.harness << " " << inst.theta[0] << " " << inst.theta[1];
  }
}
