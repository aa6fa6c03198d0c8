#include "support.hpp"

#include <gtest/gtest.h>

using namespace lpcert;

namespace {

// Trial division, the slow and obvious way.
Factorization trial_factor(u64 n) {
  Factorization f;
  f.value = n;
  for (u64 p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.factors.push_back({p, e});
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

u64 count_divisors(u64 n) {
  u64 c = 0;
  for (u64 d = 1; d * d <= n; ++d)
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  return c;
}

}  // namespace

TEST(Characters, Values) {
  EXPECT_EQ(chi(3, 1), 1);
  EXPECT_EQ(chi(3, 2), -1);
  EXPECT_EQ(chi(3, 3), 0);
  EXPECT_EQ(chi(3, -1), -1);
  EXPECT_EQ(chi(4, 1), 1);
  EXPECT_EQ(chi(4, 3), -1);
  EXPECT_EQ(chi(4, 6), 0);
  EXPECT_EQ(chi(4, -1), -1);
  EXPECT_THROW(chi(5, 1), DomainError);
}

TEST(Characters, Multiplicative) {
  for (int m : {3, 4})
    for (long long a = -20; a <= 20; ++a)
      for (long long b = -20; b <= 20; ++b) EXPECT_EQ(chi(m, a * b), chi(m, a) * chi(m, b));
}

TEST(Factorize, MatchesTrialDivision) {
  for (u64 n = 1; n <= 20000; ++n) ASSERT_EQ(factorize(n), trial_factor(n)) << n;
}

TEST(Factorize, LargeSemiprimesAndPrimes) {
  const u64 p = 4294967291ULL, q = 4294967279ULL;  // largest primes below 2^32
  Factorization f = factorize(p * q);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].p, q);
  EXPECT_EQ(f.factors[1].p, p);
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(18446744073709551557ULL - 2));
  EXPECT_EQ(factorize(6983776800ULL), trial_factor(6983776800ULL));
}

TEST(Sigma0, MatchesDivisorCount) {
  for (u64 n = 1; n <= 5000; ++n) ASSERT_EQ(sigma0(factorize(n)), count_divisors(n)) << n;
}

TEST(FactorWindow, AgreesWithFactorize) {
  for (u64 lo : {u64(1), u64(999'000), u64(5'347'000'000)}) {
    FactorWindow w(lo, lo + 4096);
    for (u64 n = lo; n < lo + 4096; ++n) ASSERT_EQ(w.at(n), factorize(n)) << n;
  }
}

TEST(FactorWindow, Errors) {
  EXPECT_THROW(FactorWindow(0, 10), ConfigError);
  EXPECT_THROW(FactorWindow(10, 10), ConfigError);
  EXPECT_THROW(FactorWindow(1, 2 + FactorWindow::kMaxWindow), ConfigError);
  FactorWindow w(100, 200);
  EXPECT_THROW(w.at(200), DomainError);
}

TEST(PrimeTable, CountsPrimes) {
  EXPECT_EQ(PrimeTable(100).primes().size(), 25u);
  EXPECT_EQ(PrimeTable(1'000'000).primes().size(), 78498u);
}

TEST(DivisorRatio, NicolasRobinMaximizer) {
  RatInterval r = divisor_ratio(factorize(6983776800ULL));
  EXPECT_LT(r.hi - r.lo, Rational(1, 1000000000));
  EXPECT_NEAR(r.mid().get_d(), 1.5379, 1e-4);
}

TEST(DivisorEnvelope, BoundsSigma0) {
  const Rational r = make_rational(153794, 100000);
  for (u64 n = 2; n <= 3000; ++n) ASSERT_GE(divisor_envelope(n, r), Rational(static_cast<long>(count_divisors(n)))) << n;
  for (u64 n : {720720ULL, 6983776800ULL, 97821761637600ULL})
    EXPECT_GE(divisor_envelope(n, r), Rational(static_cast<long>(sigma0(factorize(n)))));
  EXPECT_THROW(divisor_envelope(1, r), DomainError);
}

TEST(Isqrt, Exact) {
  for (u64 n : {0ULL, 1ULL, 15ULL, 16ULL, 17ULL, 999999999999ULL, 18446744073709551615ULL}) {
    u64 r = isqrt64(n);
    EXPECT_LE(static_cast<u128>(r) * r, n);
    EXPECT_GT(static_cast<u128>(r + 1) * (r + 1), n);
  }
}
