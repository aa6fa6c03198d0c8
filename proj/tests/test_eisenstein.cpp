#include "support.hpp"

#include <gtest/gtest.h>

using namespace lpcert;
using lpcert::testing::solved;

namespace {

// sum_{d | n} d^2 chi(n/d) (plus) or d^2 chi(d) (minus), by divisor enumeration.
long long brute_sigma(SigmaKind k, long long n) {
  long long s = 0;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0) s += d * d * chi(k.character, k.plus ? n / d : d);
  return s;
}

// f_j(n) straight from the definition: scale, twist, divisor sum.
Rational brute_basis_coeff(int j, long long n) {
  const BasisIndex& bi = basis_index(j);
  if (n % bi.scale != 0) return 0;
  Rational v(static_cast<long>(brute_sigma(eis_sigma_kind(bi.base), n / bi.scale)));
  if (bi.twist) v *= chi(4, n);
  return v;
}

const EpsTables& shallow_tables() {
  static const EpsTables t = eps_tables(solved().x, solved().y, EpsStrategy::shallow);
  return t;
}

// a_eis(n) >= eps n^2 on every n <= limit (n = 1 mod 4 excluded on side a).
void check_floor(const BasisVector& v, Side side, const Rational& eps, u64 limit) {
  EisensteinTable eis(v, limit);
  const long double eps_ld = eps.get_d() * (1 + 1e-12);
  auto primes = std::make_shared<const PrimeTable>(isqrt64(limit) + 1);
  u64 slow = 0;
  for (u64 lo = 1; lo <= limit; lo += u64(1) << 16) {
    u64 hi = std::min(limit + 1, lo + (u64(1) << 16));
    FactorWindow fw(lo, hi, primes);
    for (u64 n = lo; n < hi; ++n) {
      if (side == Side::a && n % 4 == 1) continue;
      Split s = split_23(fw.at(n));
      long double n2 = static_cast<long double>(n) * static_cast<long double>(n);
      if (eis.lower(s) >= eps_ld * n2) continue;
      ++slow;
      Rational nn(Integer(std::to_string(n)));
      ASSERT_GE(quad_sign(eis.exact(s) - QuadElem::rational(eps * nn * nn, 3)), 0) << "n = " << n;
    }
  }
  EXPECT_LT(slow, limit / 100);  // the fast path decides almost everything
}

}  // namespace

TEST(Sigma, PrimePowerFormulaMatchesDivisorSums) {
  for (SigmaKind k : {kSigma3Plus, kSigma3Minus, kSigma4Plus, kSigma4Minus})
    for (long long n = 1; n <= 3000; ++n) ASSERT_EQ(sigma(k, factorize(static_cast<u64>(n))), Integer(static_cast<long>(brute_sigma(k, n)))) << n;
}

TEST(Sigma, PlusI128AgreesWithExact) {
  for (u64 n = 1; n <= 20000; n += 7) {
    Factorization f = factorize(n);
    EXPECT_EQ(to_integer(sigma_plus_i128(3, f)), sigma(kSigma3Plus, f));
    EXPECT_EQ(to_integer(sigma_plus_i128(4, f)), sigma(kSigma4Plus, f));
  }
}

TEST(EisensteinBasis, CoefficientsMatchDefinition) {
  for (int j = 1; j <= kBasisSize; ++j) {
    if (!is_eisenstein(j)) continue;
    for (long long n = 1; n <= 600; ++n) ASSERT_EQ(eis_basis_coeff(j, static_cast<u64>(n)), brute_basis_coeff(j, n)) << j << " " << n;
  }
  EXPECT_EQ(eis_basis_coeff(6, 0), Rational(-1, 9));
  EXPECT_EQ(eis_basis_coeff(29, 0), Rational(-1, 4));
  EXPECT_EQ(eis_basis_coeff(11, 0), Rational(0));
  EXPECT_THROW(eis_basis_coeff(13, 1), DomainError);
}

TEST(EisensteinBasis, E6DualScaledTheta) {
  const long expect[] = {1, 0, 54, 72, 0, 432, 270, 0, 918, 720};
  BasisVector v = lattice_combination(Lattice::E6Dual);
  for (u64 n = 0; n < 10; ++n) EXPECT_EQ(eis_part(v, n), QuadElem::rational(expect[n], 3)) << n;
}

TEST(Regroup, TableMatchesDirectSum) {
  for (Side side : {Side::a, Side::b}) {
    const BasisVector& v = side == Side::a ? solved().x : solved().y;
    EisensteinTable t(v, 30000);
    for (u64 n = 1; n <= 30000; ++n) {
      Factorization f = factorize(n);
      Split s = split_23(f);
      QuadElem direct = eis_part(v, f);
      ASSERT_EQ(t.exact(s), direct) << n;
      ASSERT_LE(t.lower(s), to_double(direct) + 1e-9 * std::abs(to_double(direct))) << n;
    }
  }
}

TEST(Regroup, RandomVectorsAgree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    BasisVector v;
    for (int j = 1; j <= kBasisSize; ++j)
      if (is_eisenstein(j)) v[j] = lpcert::testing::random_quad(rng, 3, 50);
    EisensteinTable t(v, 5000);
    for (u64 n = 1; n <= 5000; n += 3) ASSERT_EQ(t.exact(split_23(factorize(n))), eis_part(v, n)) << n;
  }
}

TEST(RatioBounds, EnclosuresAtCutoff1e5) {
  RatioEnclosure re = ratio_bounds(100000);
  EXPECT_TRUE(re.ratio_lower.contains(make_rational(94999, 100000)));
  // the published upper value is the true product rounded up in the fifth decimal
  EXPECT_LE(re.ratio_upper.hi, make_rational(109696, 100000));
  EXPECT_EQ(rational_to_decimal(re.ratio_upper.hi, 5, Rounding::up, DigitMode::fractional), "1.09696");
  EXPECT_EQ(rational_to_decimal(re.ratio_upper.lo, 5, Rounding::up, DigitMode::fractional), "1.09696");
  EXPECT_LT(re.ratio_lower.width(), Rational(1, 100000));
  EXPECT_LT(re.ratio_upper.width(), Rational(1, 100000));
  EXPECT_LT(re.s3_lower.hi, 1);
  EXPECT_GT(re.s3_upper.lo, 1);
  EXPECT_THROW(ratio_bounds(3), DomainError);
}

TEST(RatioBounds, NestedAsCutoffGrows) {
  RatioEnclosure a = ratio_bounds(20000), b = ratio_bounds(100000);
  EXPECT_TRUE(a.ratio_lower.contains(b.ratio_lower));
  EXPECT_TRUE(a.ratio_upper.contains(b.ratio_upper));
  EXPECT_TRUE(a.s3_lower.contains(b.s3_lower));
}

TEST(RatioBounds, ContainsPartialProducts) {
  // the product to 2e6 is within 1e-7 of its limit
  RatioEnclosure re = ratio_bounds(100000);
  double lower = 1, upper = 1;
  const PrimeTable table(2'000'000);
  for (std::uint32_t p : table.primes()) {
    double p2 = double(p) * p;
    if (p % 12 == 7) lower *= (p2 - 1) / (p2 + 1);
    if (p % 12 == 5) upper *= (p2 + 1) / (p2 - 1);
  }
  EXPECT_GE(lower, re.ratio_lower.lo.get_d() - 1e-7);
  EXPECT_LE(lower, re.ratio_lower.hi.get_d() + 1e-7);
  EXPECT_GE(upper, re.ratio_upper.lo.get_d() - 1e-7);
  EXPECT_LE(upper, re.ratio_upper.hi.get_d() + 1e-7);
}

TEST(EpsTable, WorstCases) {
  const EpsTables& t = shallow_tables();
  EXPECT_GE(t.eps_a, make_rational(875, 100000000));
  EXPECT_LE(t.eps_a, make_rational(876, 100000000));
  EXPECT_NEAR(t.eps_b.get_d(), 1.358e-3, 1.358e-5);
  EXPECT_EQ(t.a_rows[eps_row_index(2, 1)].eps, t.eps_a);
  EXPECT_EQ(t.b_rows[eps_row_index(1, 0)].eps, t.eps_b);
  for (const auto* rows : {&t.a_rows, &t.b_rows})
    for (const EpsRow& r : *rows) EXPECT_TRUE(r.feasible) << r.label;
}

TEST(EpsTable, NoEntryBelowPublishedAdmissibleValue) {
  // published admissible values, rows b = 0 then b >= 1, a = 0..3, >= 4
  const double a_side[] = {0.6448, 0.003742, 0.0008134, 0.0008264, 0.0002649,
                           0.7391, 0.006758, 0.000008753, 0.006758, 0.01635};
  const double b_side[] = {0.1607, 0.001358, 0.03902, 0.2038, 0.1008, 0.2748, 0.05462, 0.01363, 0.05462, 0.1008};
  const EpsTables& t = shallow_tables();
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_GE(t.a_rows[i].eps.get_d(), a_side[i]) << t.a_rows[i].label;
    EXPECT_GE(t.b_rows[i].eps.get_d(), b_side[i]) << t.b_rows[i].label;
  }
}

TEST(EpsTable, DeepStrategyIsAlsoSound) {
  EpsTables d = eps_tables(solved().x, solved().y, EpsStrategy::deep, 100000);
  EXPECT_GT(d.eps_a, 0);
  EXPECT_GT(d.eps_b, 0);
  // every row bound holds on actual n of that class
  EisensteinTable ta(solved().x, 200000), tb(solved().y, 200000);
  for (u64 n = 2; n <= 200000; ++n) {
    Split s = split_23(factorize(n));
    std::size_t row = eps_row_index(s.a, s.b);
    Rational nn(static_cast<long>(n));
    if (n % 4 != 1) {
      ASSERT_GE(quad_sign(ta.exact(s) - QuadElem::rational(d.a_rows[row].eps * nn * nn, 3)), 0) << n;
    }
    ASSERT_GE(quad_sign(tb.exact(s) - QuadElem::rational(d.b_rows[row].eps * nn * nn, 3)), 0) << n;
  }
}

TEST(EpsTable, StructuralRatioInWorstClass) {
  // a = 2, b = 1 with chi3(n0) = -1 and chi4(n0) = 1
  for (const RegroupEntry& r : regroup(solved().x, 2, 1)) {
    if (r.s3 != -1 || r.s4 != 1) continue;
    double ratio = -to_double(r.X3) / to_double(r.X4);
    EXPECT_NEAR(ratio, 0.9482, 5e-5);
    EXPECT_LT(ratio, ratio_bounds(100000).r_lo().get_d());  // positivity hinges on this gap
  }
}

TEST(EpsTable, FloorHoldsOnActualCoefficients) {
  const EpsTables& t = shallow_tables();
  check_floor(solved().x, Side::a, t.eps_a, 1'000'000);
  check_floor(solved().y, Side::b, t.eps_b, 1'000'000);
}

TEST(EpsTable, TailSpecsValidated) {
  EXPECT_THROW(eis_monomials(solved().x, ExpSpec::at_least(3), ExpSpec::exact(0), {1, 1, 1, 1}), DomainError);
  EXPECT_THROW(eis_monomials(solved().x, ExpSpec::exact(0), ExpSpec::at_least(0), {1, 1, 1, 1}), DomainError);
}
