#include "support.hpp"

#include <gtest/gtest.h>

using namespace lpcert;
using lpcert::testing::random_quad;

namespace {

const char* kAlphaNum = "-277385984684414834701547634832199852580621960702176236773103";
const char* kAlphaDen = "535700179589322461444902359627590796379300404334023027566592";
const char* kBetaNum = "554232205790268185636220216828951751933789602521848882511869";
const char* kBetaDen = "1607100538767967384334707078882772389137901213002069082699776";

QuadElem printed_bound() {
  return QuadElem(3, make_rational(Integer(kAlphaNum), Integer(kAlphaDen)),
                  make_rational(Integer(kBetaNum), Integer(kBetaDen)));
}

}  // namespace

TEST(QuadElem, IdentityAndNorm) {
  std::mt19937_64 rng(1);
  QuadElem one = QuadElem::rational(1, 3);
  for (int i = 0; i < 100; ++i) {
    QuadElem x = random_quad(rng);
    EXPECT_EQ(one * x, x);
  }
  QuadElem u(3, 2, 1);
  EXPECT_EQ(u * u.conj(), QuadElem::rational(1, 3));
  EXPECT_EQ(u.norm(), 1);
}

TEST(QuadElem, InverseIsExact) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    QuadElem x = random_quad(rng);
    if (x.is_zero()) continue;
    EXPECT_EQ(x * x.inverse(), QuadElem::rational(1, 3));
  }
}

TEST(QuadElem, FieldMismatchAndDivisionByZero) {
  QuadElem a(3, 1, 1), b(2, 1, 1);
  EXPECT_THROW(a + b, FieldMismatch);
  EXPECT_THROW(a / QuadElem::rational(0, 3), DomainError);
  EXPECT_THROW(QuadElem(12, 1, 1), DomainError);
}

TEST(QuadElem, RationalsMixWithAnyField) {
  QuadElem a(3, 1, 1);
  QuadElem r = QuadElem::rational(2);
  EXPECT_EQ(a + r, QuadElem(3, 3, 1));
  EXPECT_EQ((r * a).d(), 3);
}

TEST(QuadSign, Basics) {
  EXPECT_EQ(quad_sign(QuadElem(3)), 0);
  EXPECT_EQ(quad_sign(QuadElem(3, 1, -1)), -1);
  EXPECT_EQ(quad_sign(QuadElem(3, -1, 1)), 1);
  EXPECT_EQ(quad_sign(QuadElem(3, 2, -1)), 1);
  EXPECT_EQ(quad_sign(QuadElem(3, -2, 1)), -1);
  EXPECT_EQ(quad_sign(printed_bound()), 1);
}

TEST(QuadSign, AgreesWithIntervalMidpoint) {
  std::mt19937_64 rng(3);
  const Rational prec(1, Integer(1) << 100);
  for (int i = 0; i < 10000; ++i) {
    QuadElem x = random_quad(rng, 3, 100000);
    RatInterval e = enclose(x, prec);
    int s = sgn(e.mid());
    if (e.contains(Rational(0))) continue;  // not decidable at this precision (never happens in practice)
    EXPECT_EQ(quad_sign(x), s) << x.to_string();
  }
}

TEST(QuadDecimal, PrintedBoundDigits) {
  QuadElem v = printed_bound();
  // independent 80-digit evaluation: 0.07952233384505228637384503021820516652488974...
  EXPECT_EQ(quad_to_decimal(v, 38, Rounding::down), "0.079522333845052286373845030218205166524");
  EXPECT_EQ(quad_to_decimal(v, 38, Rounding::up), "0.079522333845052286373845030218205166525");
  EXPECT_NEAR(v.a().get_d(), -0.5178, 1e-4);
  EXPECT_NEAR(v.b().get_d(), 0.3448, 1e-4);
}

TEST(QuadDecimal, E6CenterDensity) {
  // 1/(8 sqrt 3) = sqrt(3)/24
  QuadElem v(3, 0, Rational(1, 24));
  EXPECT_EQ(quad_to_decimal(v, 6, Rounding::down, DigitMode::fractional), "0.072168");
  EXPECT_EQ(quad_to_decimal(QuadElem(3), 5, Rounding::down, DigitMode::fractional), "0.00000");
}

TEST(QuadDecimal, DirectedRoundingBrackets) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    QuadElem x = random_quad(rng, 3, 1000000);
    for (unsigned long n : {1ul, 5ul, 17ul, 40ul}) {
      Rational lo = parse_rational(quad_to_decimal(x, n, Rounding::down));
      Rational hi = parse_rational(quad_to_decimal(x, n, Rounding::up));
      EXPECT_GE(quad_sign(x - QuadElem::rational(lo, 3)), 0);
      EXPECT_LE(quad_sign(x - QuadElem::rational(hi, 3)), 0);
      Rational near = parse_rational(quad_to_decimal(x, n, Rounding::nearest));
      EXPECT_TRUE(near == lo || near == hi);
    }
  }
}

TEST(Interval, Constants) {
  RatInterval s3 = enclose_constant(SqrtOf{3}, Rational(1, 1000000));
  EXPECT_LE(s3.width(), Rational(1, 1000000));
  EXPECT_TRUE(s3.contains(parse_rational("1.7320508")));
  RatInterval sq = s3 * s3;
  EXPECT_TRUE(sq.contains(Rational(3)));
  RatInterval pi = enclose_constant(Pi{}, Rational(1, 10000000000));
  EXPECT_LE(pi.width(), Rational(1, 10000000000));
  EXPECT_LE(pi.lo, parse_rational("3.14159265358979323847"));
  EXPECT_GE(pi.hi, parse_rational("3.14159265358979323846"));
  EXPECT_GT(pi.lo, parse_rational("3.14159265358"));
}

TEST(Interval, LogExpEnclose) {
  RatInterval l2 = log_of(2);
  EXPECT_LT(l2.lo, parse_rational("0.693147180559945309418"));
  EXPECT_GT(l2.hi, parse_rational("0.693147180559945309417"));
  RatInterval e = interval_exp(RatInterval::point(1));
  EXPECT_LE(e.lo, parse_rational("2.718281828459045235360288"));
  EXPECT_GE(e.hi, parse_rational("2.718281828459045235360287"));
  EXPECT_LT(e.width(), parse_rational("1e-60"));
}

TEST(LinearSystem, IdentityAndSmall) {
  QuadMatrix I = QuadMatrix::identity(3, 3);
  std::vector<QuadElem> rhs = {QuadElem(3, 1, 2), QuadElem(3, 0, 1), QuadElem::rational(5, 3)};
  EXPECT_EQ(solve_linear_system(I, rhs), rhs);
  QuadMatrix A(2, 2, 3);
  A(0, 0) = QuadElem(3, 1, 1);
  A(0, 1) = QuadElem::rational(2, 3);
  A(1, 0) = QuadElem::rational(-1, 3);
  A(1, 1) = QuadElem(3, 0, 1);
  std::vector<QuadElem> b = {QuadElem::rational(1, 3), QuadElem(3, 2, -1)};
  auto x = solve_linear_system(A, b);
  EXPECT_EQ(A.apply(x), b);
}

TEST(LinearSystem, RandomResidualIsZero) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    QuadMatrix A(8, 8, 3);
    std::vector<QuadElem> b;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) A(i, j) = random_quad(rng, 3, 50);
      b.push_back(random_quad(rng, 3, 50));
    }
    auto x = solve_linear_system(A, b);
    EXPECT_EQ(A.apply(x), b);
  }
}

TEST(LinearSystem, SingularReportsRankAndKernel) {
  QuadMatrix A(3, 3, 3);
  A(0, 0) = QuadElem::rational(1, 3);
  A(1, 1) = QuadElem(3, 0, 1);
  A(2, 0) = QuadElem::rational(2, 3);
  std::vector<QuadElem> b(3, QuadElem::rational(0, 3));
  try {
    solve_linear_system(A, b);
    FAIL() << "expected RankDeficiency";
  } catch (const RankDeficiency& e) {
    EXPECT_EQ(e.rank, 2u);
  }
  QuadMatrix m = A;
  auto er = row_reduce(m);
  ASSERT_EQ(er.kernel.size(), 1u);
  auto img = A.apply(er.kernel[0]);
  for (auto& v : img) EXPECT_TRUE(v.is_zero());
}

TEST(Rationals, ParseAndCanonical) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("8.7536e-6"), make_rational(87536, 10000000000L));
  EXPECT_EQ(make_rational(2, 4).get_den(), 2);
}
