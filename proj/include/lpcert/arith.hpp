#pragma once

// Quadratic characters mod 3 and 4, 64-bit factorization, a segmented
// factoring sieve and the divisor-count envelope.

#include "lpcert/exact.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

namespace lpcert {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int chi(int modulus, long long n) {
  if (modulus == 3) {
    long long r = ((n % 3) + 3) % 3;
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
  }
  if (modulus == 4) {
    long long r = ((n % 4) + 4) % 4;
    return (r % 2 == 0) ? 0 : (r == 1 ? 1 : -1);
  }
  throw DomainError("chi: modulus must be 3 or 4");
}

struct PrimePower {
  u64 p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;  // increasing p

  int exponent_of(u64 p) const {
    for (auto& f : factors)
      if (f.p == p) return f.e;
    return 0;
  }
  // part of the value coprime to 6, and the 2- and 3-adic valuations
  u64 coprime6_part() const {
    u64 m = value;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    return m;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Deterministic Miller-Rabin for n < 2^64 (first twelve prime bases).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small)
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
inline u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  for (;;) {
    u64 c = rng() % (n - 1) + 1;
    u64 y = rng() % n, m = 128, g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 f = pollard_rho(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace detail

inline Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize(0)");
  Factorization f;
  f.value = n;
  u64 m = n;
  for (u64 p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (m > 1) {
    std::vector<u64> ps;
    detail::split(m, ps);
    std::sort(ps.begin(), ps.end());
    for (u64 p : ps) {
      if (!f.factors.empty() && f.factors.back().p == p)
        ++f.factors.back().e;
      else
        f.factors.push_back({p, 1});
    }
  }
  return f;
}

inline int valuation(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline u64 sigma0(const Factorization& f) {
  u64 r = 1;
  for (auto& pe : f.factors) r *= static_cast<u64>(pe.e + 1);
  return r;
}

// exp(R log n / log log n) with R = r log 2, as an outward-rounded interval.
inline RatInterval divisor_envelope_interval(u64 n, const Rational& r) {
  if (n < 2) throw DomainError("divisor_envelope needs n >= 2");
  RatInterval logn = log_of(Rational(Integer(std::to_string(n))));
  RatInterval log2 = log_of(2);
  if (n < 16) {
    // log log n <= 1 here; use the trivial bound sigma0(n) <= n instead
    return RatInterval::point(Rational(Integer(std::to_string(n))));
  }
  RatInterval loglog = interval_log(logn);
  RatInterval e = RatInterval::point(r) * log2 * logn / loglog;
  return interval_exp(e);
}

// Certified upper bound for sigma0(n) when r is at least the Nicolas-Robin maximum.
inline Rational divisor_envelope(u64 n, const Rational& r) { return divisor_envelope_interval(n, r).hi; }

// log sigma0(n) log log n / (log 2 log n), enclosed.
inline RatInterval divisor_ratio(const Factorization& f) {
  if (f.value < 16) throw DomainError("divisor_ratio needs n >= 16");
  RatInterval logn = log_of(Rational(Integer(std::to_string(f.value))));
  RatInterval num = log_of(Rational(Integer(std::to_string(sigma0(f))))) * interval_log(logn);
  return num / (log_of(2) * logn);
}

// ---------------------------------------------------------------------------
// Segmented factoring sieve.

class PrimeTable {
 public:
  explicit PrimeTable(u64 limit) : limit_(limit) {
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
      if (comp[i]) continue;
      primes_.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  u64 limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  u64 limit_;
  std::vector<std::uint32_t> primes_;
};

inline u64 isqrt64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

class FactorWindow {
 public:
  static constexpr u64 kMaxWindow = u64(1) << 20;
  static constexpr int kMaxFactors = 15;  // distinct primes of any n < 2^64

  FactorWindow(u64 lo, u64 hi, std::shared_ptr<const PrimeTable> primes = nullptr) : lo_(lo), hi_(hi) {
    if (lo < 1 || lo >= hi) throw ConfigError("factor_window: need 1 <= lo < hi");
    if (hi - lo > kMaxWindow) throw ConfigError("factor_window: window exceeds " + std::to_string(kMaxWindow));
    u64 root = isqrt64(hi - 1);
    if (!primes || primes->limit() < root) primes = std::make_shared<PrimeTable>(root);
    std::size_t len = hi - lo;
    rest_.resize(len);
    count_.assign(len, 0);
    p_.resize(len * kMaxFactors);
    e_.resize(len * kMaxFactors);
    for (std::size_t i = 0; i < len; ++i) rest_[i] = lo + i;
    for (std::uint32_t p : primes->primes()) {
      if (static_cast<u64>(p) * p > hi - 1) break;
      u64 start = ((lo + p - 1) / p) * p;
      for (u64 m = start; m < hi; m += p) {
        std::size_t i = m - lo;
        std::uint8_t e = 0;
        do {
          rest_[i] /= p;
          ++e;
        } while (rest_[i] % p == 0);
        std::size_t k = i * kMaxFactors + count_[i]++;
        p_[k] = p;
        e_[k] = e;
      }
    }
  }

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }

  Factorization at(u64 n) const {
    if (n < lo_ || n >= hi_) throw DomainError("factor_window: n outside window");
    std::size_t i = n - lo_;
    Factorization f;
    f.value = n;
    f.factors.reserve(count_[i] + 1);
    for (int k = 0; k < count_[i]; ++k) f.factors.push_back({p_[i * kMaxFactors + k], e_[i * kMaxFactors + k]});
    if (rest_[i] > 1) f.factors.push_back({rest_[i], 1});
    return f;
  }

 private:
  u64 lo_, hi_;
  std::vector<u64> rest_;
  std::vector<std::uint8_t> count_;
  std::vector<std::uint32_t> p_;
  std::vector<std::uint8_t> e_;
};

inline FactorWindow factor_window(u64 lo, u64 hi) { return FactorWindow(lo, hi); }

}  // namespace lpcert
