#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <thread>

#include "diophlab/core/error.hpp"
#include "diophlab/numeric/continued_fraction.hpp"
#include "diophlab/numeric/exact.hpp"
#include "diophlab/numeric/oracle.hpp"
#include "diophlab/numeric/standard_part.hpp"
#include "diophlab/numeric/upoly.hpp"
#include "support/test_oracles.hpp"

using namespace diophlab;

namespace {

PrecisionReal interval(const char* lo, const char* hi) {
  return PrecisionReal(Interval(parse_rational(lo), parse_rational(hi), 128));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Usage;
}

}  // namespace

TEST(NearestInteger, SpecExamples) {
  auto r = nearest_integer(PrecisionReal(parse_rational("2.6"), 64));
  EXPECT_EQ(r.n, 3);
  EXPECT_EQ(*r.residual.exact(), parse_rational("-0.4"));
  auto w = nearest_integer(interval("2.59", "2.61"));
  EXPECT_EQ(w.n, 3);
  EXPECT_TRUE(w.residual.enclosure().contains(parse_rational("-0.4")));
  EXPECT_EQ(nearest_integer(PrecisionReal(Rational(5, 2), 64)).n, 2);
  EXPECT_EQ(nearest_integer(PrecisionReal(Rational(7, 2), 64)).n, 4);
  EXPECT_EQ(nearest_integer(PrecisionReal(Rational(-5, 2), 64)).n, -2);
  EXPECT_EQ(code_of([] { nearest_integer(interval("2.4999", "2.5001")); }), ErrorCode::PrecisionInsufficient);
  EXPECT_EQ(code_of([] { nearest_integer(interval("1", "1.3")); }), ErrorCode::PrecisionInsufficient);
}

TEST(NearestInteger, ResidualBelowHalfProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    Rational q(num(rng), 997);
    q.canonicalize();
    auto r = nearest_integer(RealOracle::rational(q).eval(64));
    EXPECT_LE(abs(*r.residual.exact()), Rational(1, 2));
    auto s = nearest_integer(RealOracle::sqrt(Rational(i + 2)).scaled(q), 64);
    EXPECT_TRUE(s.residual.abs_less_than(Rational(1, 2)) || s.residual.enclosure().contains(Rational(1, 2)));
  }
}

TEST(StdEstimate, SpecExamples) {
  std::vector<PrecisionReal> alt, constant;
  for (int i = 0; i < 40; ++i) {
    alt.emplace_back(Rational(i % 2), 64);
    constant.emplace_back(Rational(1, 4), 64);
  }
  auto a = std_estimate(alt, {});
  EXPECT_FALSE(a.has_limit);
  ASSERT_EQ(a.clusters.size(), 2u);
  EXPECT_DOUBLE_EQ(a.clusters[0].density, 0.5);
  EXPECT_DOUBLE_EQ(a.clusters[1].density, 0.5);
  auto c = std_estimate(constant, {});
  ASSERT_TRUE(c.has_limit);
  EXPECT_TRUE(c.limit->contains(Rational(1, 4)));
  EXPECT_TRUE(c.limit->is_point());
}

TEST(StdEstimate, ConvergentSequenceOnCircle) {
  // frac(q_k sqrt 2) accumulates at 0 from both sides of the circle.
  auto cf = continued_fraction(RealOracle::sqrt(2), 20);
  std::vector<PrecisionReal> vals;
  for (const auto& [p, q] : cf.convergents) vals.push_back(RealOracle::sqrt(2).scaled(Rational(q)).eval(128));
  auto est = std_estimate(vals, {0.9, 1.0 / 32, StdMode::Circle});
  ASSERT_TRUE(est.has_limit);
  Rational w = est.limit->width();
  EXPECT_TRUE(est.limit->contains(Rational(0)) || abs(est.limit->mid_rational()) <= w);
  double total = 0;
  for (const auto& cl : est.clusters) total += cl.density;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(StdEstimate, GeometricLimitWithinFinalWidth) {
  std::vector<PrecisionReal> vals;
  for (int k = 1; k <= 30; ++k) vals.emplace_back(Rational(1, 3) + Rational(1, Integer(1) << k), 64);
  auto est = std_estimate(vals, {});
  ASSERT_TRUE(est.has_limit);
  Rational dist = abs(Rational(est.limit->mid_rational() - Rational(1, 3)));
  EXPECT_LE(dist, est.limit->width());
}

TEST(Oracle, RationalIsExactPoint) {
  auto x = RealOracle::parse("3/7").eval(10);
  ASSERT_TRUE(x.exact());
  EXPECT_EQ(*x.exact(), Rational(3, 7));
  EXPECT_TRUE(x.enclosure().contains(Rational(3, 7)));
}

TEST(Oracle, GoldenMeanAgainstLongDivisionSqrt) {
  auto phi = RealOracle::surd(1, 1, 2, 5);
  // 100 decimal digits of sqrt 5 by long division bracket phi.
  Integer ten100 = ipow(10, 100);
  Integer s5 = testref::decimal_sqrt(5, 100);
  Rational phi_lo = (1 + Rational(s5, ten100)) / 2, phi_hi = (1 + Rational(s5 + 1, ten100)) / 2;
  auto v = phi.eval(64).enclosure();
  EXPECT_TRUE(v.width_within(64));
  EXPECT_FALSE(v.hi_rational() < phi_lo);
  EXPECT_FALSE(v.lo_rational() > phi_hi);
}

TEST(Oracle, PiAtEightBits) {
  auto v = RealOracle::pi().eval(8).enclosure();
  EXPECT_TRUE(Interval(parse_rational("3.140"), parse_rational("3.145"), 64).contains(v) ||
              v.width_within(8));
  EXPECT_FALSE(v.lo_rational() < parse_rational("3.140") && v.hi_rational() > parse_rational("3.145"));
  EXPECT_TRUE(v.contains(parse_rational("3.14159265358979")));
}

TEST(Oracle, DigitStreamTooShort) {
  auto d = RealOracle::parse("digits(10;3.14159)");
  EXPECT_NO_THROW(d.eval(12));
  EXPECT_EQ(code_of([&] { d.eval(64); }), ErrorCode::UnevaluatableDigitStream);
}

TEST(Oracle, WidthAndNestingProperty) {
  for (const char* lit : {"pi", "e", "log(2)", "surd(1,1,2,5)", "alg([-2,0,1];[1.4,1.5])", "exp(surd(0,1,1,2))",
                          "mul(pi,e)", "inv(add(pi,1))", "pow(log(3),3)"}) {
    auto x = RealOracle::parse(lit);
    auto coarse = x.eval(40);
    auto fine = x.eval(200);
    EXPECT_TRUE(coarse.enclosure().width_within(40)) << lit;
    EXPECT_TRUE(fine.enclosure().width_within(200)) << lit;
    EXPECT_TRUE(coarse.enclosure().contains(fine.enclosure())) << lit;
  }
}

TEST(Oracle, LiteralRoundTrip) {
  for (const char* lit : {"3/7", "-2", "surd(1,1,2,5)", "pi", "e", "log(2)", "alg([-2,0,1];[7/5,3/2])",
                          "digits(10;3.14159)", "exp(pi)", "add(pi,e)", "mul(pi,log(3))", "inv(pi)", "pow(e,3)",
                          "scale(3/2,pi)"}) {
    auto x = RealOracle::parse(lit);
    auto y = RealOracle::parse(x.literal());
    EXPECT_EQ(x.literal(), y.literal()) << lit;
  }
  EXPECT_EQ(RealOracle::parse("alg([\xE2\x88\x92" "2,0,1];[1.4,1.5])").literal(), "alg([-2,0,1];[7/5,3/2])");
}

TEST(Oracle, Simplifications) {
  auto pi = RealOracle::pi();
  EXPECT_EQ(pi.reciprocal().reciprocal().literal(), "pi");
  auto s = RealOracle::sqrt(2);
  EXPECT_EQ(s.kind(), OracleKind::Surd);
  EXPECT_EQ(s.reciprocal().kind(), OracleKind::Surd);
  EXPECT_EQ((s * s).as_rational(), Rational(2));
  EXPECT_EQ(RealOracle::log(2).exp().as_rational(), Rational(2));
  EXPECT_EQ(RealOracle::sqrt(8).literal(), "surd(0,2,1,2)");
}

TEST(Oracle, ConcurrentEvaluationSharesCache) {
  auto x = RealOracle::parse("exp(pi)");
  std::vector<std::thread> threads;
  std::vector<PrecisionReal> out(8);
  for (int t = 0; t < 8; ++t) threads.emplace_back([&, t] { out[static_cast<size_t>(t)] = x.eval(64 + 32 * t); });
  for (auto& th : threads) th.join();
  for (int t = 0; t < 8; ++t) EXPECT_TRUE(out[static_cast<size_t>(t)].enclosure().width_within(64 + 32 * t));
}

TEST(Polynomial, SturmCountsMatchSignChanges) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntVector c;
    for (int i = 0; i < 4; ++i) c.emplace_back(coef(rng));
    c.emplace_back(1 + trial % 3);
    QPoly p = QPoly::from_integers(c);
    auto roots = isolate_real_roots(p);
    // Reference: sign changes on a fine grid catch every simple root here.
    int grid = 0;
    double prev = 0;
    for (int k = -40000; k <= 40000; ++k) {
      double x = k / 1000.0 + 1e-7;
      double v = 0;
      for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[static_cast<size_t>(i)].get_d();
      if (k > -40000 && ((v < 0) != (prev < 0))) ++grid;
      prev = v;
    }
    EXPECT_GE(static_cast<int>(roots.size()), grid) << p.to_string();
    for (const auto& [lo, hi] : roots) EXPECT_EQ(count_roots_closed(p, lo, hi), 1);
  }
}

TEST(ContinuedFraction, Examples) {
  auto s2 = continued_fraction(RealOracle::sqrt(2), 5);
  std::vector<std::pair<Integer, Integer>> want{{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
  EXPECT_EQ(s2.convergents, want);
  auto r = continued_fraction(RealOracle::rational(Rational(3, 7)), 10);
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.convergents.back(), std::make_pair(Integer(3), Integer(7)));
  auto pi = continued_fraction(RealOracle::pi(), 4);
  EXPECT_EQ(pi.convergents[3], std::make_pair(Integer(355), Integer(113)));
}

TEST(Exact, LinearFormsAndZeroTests) {
  auto s2 = RealOracle::sqrt(2), s8 = RealOracle::sqrt(8);
  EXPECT_EQ(exact_zero_combination(IntVector{2, -1}, {s2, s8}), std::optional<bool>(true));
  EXPECT_EQ(exact_zero_combination(IntVector{1, 1, -1}, {RealOracle::log(2), RealOracle::log(3), RealOracle::log(6)}),
            std::optional<bool>(true));
  EXPECT_EQ(exact_zero_combination(IntVector{1, 1}, {RealOracle::pi(), RealOracle::euler()}), std::nullopt);
  auto a = RealOracle::parse("alg([-2,0,1];[1,2])");
  EXPECT_EQ(exact_zero_combination(IntVector{1, -2}, {a.pow(2), RealOracle::integer(1)}), std::optional<bool>(true));
  EXPECT_EQ(exact_zero_combination(IntVector{1, -3}, {a.pow(2), RealOracle::integer(1)}), std::optional<bool>(false));
  // sqrt2 * sqrt3 - sqrt6 = 0
  EXPECT_EQ(exact_zero_combination(IntVector{1, -1}, {RealOracle::sqrt(2) * RealOracle::sqrt(3), RealOracle::sqrt(6)}),
            std::optional<bool>(true));
}
