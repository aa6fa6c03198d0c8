#pragma once

// Twisted divisor sums, Eisenstein basis coefficients, the (X3, X4)
// regrouping and certified lower bounds a_eis >= eps n^2.

#include "lpcert/arith.hpp"
#include "lpcert/registry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lpcert {

struct SigmaKind {
  int character;  // 3 or 4
  bool plus;      // plus: chi on n/d; minus: chi on d
  friend bool operator==(const SigmaKind&, const SigmaKind&) = default;
};

inline constexpr SigmaKind kSigma3Plus{3, true}, kSigma3Minus{3, false}, kSigma4Plus{4, true},
    kSigma4Minus{4, false};

inline Integer sigma_prime_power(SigmaKind kind, u64 p, int e) {
  if (e < 0) throw DomainError("negative exponent");
  if (e == 0) return 1;
  int c = chi(kind.character, static_cast<long long>(p % 12));
  Integer p2 = Integer(p) * p;
  if (c == 0) {
    if (!kind.plus) return 1;
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p2.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }
  // sigma^-(p^e) = ((c p^2)^(e+1) - 1) / (c p^2 - 1),  sigma^+ = c^e sigma^-
  Integer t = c * p2, te;
  mpz_pow_ui(te.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(e + 1));
  Integer minus = (te - 1) / (t - 1);
  if (kind.plus && c < 0 && (e % 2 == 1)) return -minus;
  return minus;
}

inline Integer sigma(SigmaKind kind, const Factorization& f) {
  Integer r = 1;
  for (auto& pe : f.factors) r *= sigma_prime_power(kind, pe.p, pe.e);
  return r;
}

// 128-bit variant for the scan fast path; caller guarantees n <= 10^18.
inline __int128 sigma_plus_i128(int character, const Factorization& f) {
  __int128 r = 1;
  for (auto& pe : f.factors) {
    int c = chi(character, static_cast<long long>(pe.p % 12));
    __int128 p2 = static_cast<__int128>(pe.p) * pe.p;
    __int128 term = 1, acc = 1;
    for (int i = 1; i <= pe.e; ++i) {
      term *= p2;
      acc = (c == 0) ? term : acc * c + term;  // sum_{i} p^{2i} c^{e-i}
    }
    r *= acc;
  }
  return r;
}

// f with s = 2^i 3^j divided out, or nullopt when s does not divide.
inline std::optional<Factorization> divide_out(const Factorization& f, int i2, int i3) {
  Factorization g;
  g.value = f.value;
  int need2 = i2, need3 = i3;
  for (auto& pe : f.factors) {
    int e = pe.e;
    if (pe.p == 2) {
      e -= need2;
      need2 = 0;
    } else if (pe.p == 3) {
      e -= need3;
      need3 = 0;
    }
    if (e < 0) return std::nullopt;
    if (e > 0) g.factors.push_back({pe.p, e});
  }
  if (need2 > 0 || need3 > 0) return std::nullopt;
  for (int k = 0; k < i2; ++k) g.value /= 2;
  for (int k = 0; k < i3; ++k) g.value /= 3;
  return g;
}

// Divisor-sum kind and constant term of the four unscaled Eisenstein series.
inline SigmaKind eis_sigma_kind(int base) {
  switch (base) {
    case 1: return kSigma3Plus;
    case 6: return kSigma3Minus;
    case 23: return kSigma4Plus;
    case 29: return kSigma4Minus;
  }
  throw DomainError("not an Eisenstein base: " + std::to_string(base));
}

inline Rational eis_constant_term(int base) {
  if (base == 6) return Rational(-1, 9);
  if (base == 29) return Rational(-1, 4);
  return 0;
}

inline Rational eis_basis_coeff(int index, const Factorization& f) {
  const BasisIndex& bi = basis_index(index);
  if (bi.kind != BasisKind::eisenstein) throw DomainError("not an Eisenstein index: " + std::to_string(index));
  auto g = divide_out(f, valuation(static_cast<u64>(bi.scale), 2), valuation(static_cast<u64>(bi.scale), 3));
  if (!g) return 0;
  Rational v(sigma(eis_sigma_kind(bi.base), *g));
  if (bi.twist) v *= chi(4, static_cast<long long>(f.value % 4));
  return v;
}

inline Rational eis_basis_coeff(int index, u64 n) {
  const BasisIndex& bi = basis_index(index);
  if (bi.kind != BasisKind::eisenstein) throw DomainError("not an Eisenstein index: " + std::to_string(index));
  if (n == 0) return bi.twist ? Rational(0) : eis_constant_term(bi.base);  // chi_4(0) = 0
  return eis_basis_coeff(index, factorize(n));
}

inline QuadElem eis_part(const BasisVector& v, const Factorization& f) {
  QuadElem s = QuadElem::rational(0, 3);
  for (int j = 1; j <= kBasisSize; ++j) {
    if (!is_eisenstein(j) || v[j].is_zero()) continue;
    Rational c = eis_basis_coeff(j, f);
    if (c != 0) s += v[j] * c;
  }
  return s;
}

inline QuadElem eis_part(const BasisVector& v, u64 n) {
  if (n == 0) {
    QuadElem s = QuadElem::rational(0, 3);
    for (int j = 1; j <= kBasisSize; ++j)
      if (is_eisenstein(j)) s += v[j] * eis_basis_coeff(j, u64(0));
    return s;
  }
  return eis_part(v, factorize(n));
}

// ---------------------------------------------------------------------------
// Normalized Eisenstein part.  For n = 2^a 3^b n0 (gcd(n0, 6) = 1),
//   a_eis / n^2 = (sigma3+(n0)/n0^2) (X3n + r X4n),  r = sigma4+(n0)/sigma3+(n0),
// and X3n, X4n are polynomials in U = 4^-a, V = 9^-b whose coefficients depend
// on the signs s3 = chi3(n0), s4 = chi4(n0), pa = (-1)^a, pb = (-1)^b.

struct Monomials {
  QuadElem c1 = QuadElem::rational(0, 3), cU = c1, cV = c1, cUV = c1;
};

// Exponent constraint: exact value, or "all values >= from" (a tail).
struct ExpSpec {
  int value;
  bool tail;
  static ExpSpec exact(int v) { return {v, false}; }
  static ExpSpec at_least(int v) { return {v, true}; }
  friend bool operator==(const ExpSpec&, const ExpSpec&) = default;
};

struct SignClass {
  int s3, s4, pa, pb;
};

namespace detail {

inline Rational pow_rat(long base, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(r) : Rational(1, r);
}

}  // namespace detail

// Coefficients of X3n and X4n.  Scales needing more powers of 2 or 3 than the
// exponent constraints allow are dropped; tails must start late enough that every scale is present.
inline std::pair<Monomials, Monomials> eis_monomials(const BasisVector& v, ExpSpec a, ExpSpec b, SignClass sc) {
  if (a.tail && a.value < 4) throw DomainError("a-tail must start at a >= 4");
  if (b.tail && b.value < 1) throw DomainError("b-tail must start at b >= 1");
  Monomials m3, m4;
  for (int j = 1; j <= kBasisSize; ++j) {
    const BasisIndex& bi = basis_index(j);
    if (bi.kind != BasisKind::eisenstein || v[j].is_zero()) continue;
    int al = valuation(static_cast<u64>(bi.scale), 2), be = valuation(static_cast<u64>(bi.scale), 3);
    if (!a.tail && a.value < al) continue;
    if (!b.tail && b.value < be) continue;
    Rational tw = 1;
    if (bi.twist) {
      if (a.tail || a.value > 0) continue;  // chi4(n) = 0 for even n
      tw = sc.pb * sc.s4;
    }
    const QuadElem x = v[j] * tw;
    int sa = (al % 2 == 0) ? sc.pa : -sc.pa;  // (-1)^(a - alpha)
    int sb = (be % 2 == 0) ? sc.pb : -sc.pb;  // (-1)^(b - beta)
    SigmaKind k = eis_sigma_kind(bi.base);
    if (k == kSigma3Plus) {
      Rational w = detail::pow_rat(9, -be) / 5;
      m3.c1 += x * (detail::pow_rat(4, 1 - al) * w);
      m3.cU += x * (sa * w);
    } else if (k == kSigma3Minus) {
      m3.cV += x * (Rational(sc.s3 * sa) * detail::pow_rat(4, 1 - al) / 5);
      m3.cUV += x * Rational(sc.s3, 5);
    } else if (k == kSigma4Plus) {
      Rational w = detail::pow_rat(4, -al) / 10;
      m4.c1 += x * (detail::pow_rat(9, 1 - be) * w);
      m4.cV += x * (sb * w);
    } else {
      m4.cU += x * (Rational(sc.s4 * sb) * detail::pow_rat(9, 1 - be) / 10);
      m4.cUV += x * Rational(sc.s4, 10);
    }
  }
  return {m3, m4};
}

inline QuadElem abs_quad(const QuadElem& x) { return quad_sign(x) < 0 ? -x : x; }

// Lower bound of a monomial polynomial over the exponent constraints.  An exact a is
// substituted first, so the V-terms merge into one coefficient; whatever still
// touches a tail variable is bounded below by -|coefficient| times the largest
// value of the monomial.
inline QuadElem monomial_lower_bound(const Monomials& m, ExpSpec a, ExpSpec b) {
  Rational U = detail::pow_rat(4, -a.value), V = detail::pow_rat(9, -b.value);
  auto term = [&](const QuadElem& c, const Rational& mono, bool tail) {
    return tail ? -(abs_quad(c) * mono) : c * mono;
  };
  if (!a.tail) return m.c1 + m.cU * U + term(m.cV + m.cUV * U, V, b.tail);
  return m.c1 + term(m.cU, U, true) + term(m.cV, V, b.tail) + term(m.cUV, U * V, true);
}

// Exact (X3, X4) of the regrouping a_eis = sigma3+(n0) X3 + sigma4+(n0) X4.
struct RegroupEntry {
  int s3, s4;
  QuadElem X3, X4;
};

inline std::vector<RegroupEntry> regroup(const BasisVector& v, int a, int b) {
  if (a < 0 || b < 0) throw DomainError("negative exponent");
  std::vector<RegroupEntry> out;
  Rational scale = detail::pow_rat(4, a) * detail::pow_rat(9, b);
  Rational U = detail::pow_rat(4, -a), V = detail::pow_rat(9, -b);
  for (int s3 : {1, -1})
    for (int s4 : {1, -1}) {
      SignClass sc{s3, s4, a % 2 ? -1 : 1, b % 2 ? -1 : 1};
      auto [m3, m4] = eis_monomials(v, ExpSpec::exact(a), ExpSpec::exact(b), sc);
      auto eval = [&](const Monomials& m) { return (m.c1 + m.cU * U + m.cV * V + m.cUV * (U * V)) * scale; };
      out.push_back({s3, s4, eval(m3), eval(m4)});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Euler products bounding sigma4+(n0)/sigma3+(n0) and sigma+(n0)/n0^2.

struct RatioEnclosure {
  RatInterval ratio_lower;  // contains prod_{p = 7 (12)} (p^2-1)/(p^2+1)
  RatInterval ratio_upper;  // contains prod_{p = 5 (12)} (p^2+1)/(p^2-1)
  RatInterval s3_lower;     // prod_{p = 2 (3), p > 2} (1 - p^-2)
  RatInterval s3_upper;     // prod_{p = 1 (3)} 1/(1 - p^-2)
  RatInterval s4_lower;     // prod_{p = 3 (4), p > 3} (1 - p^-2)
  RatInterval s4_upper;     // prod_{p = 1 (4)} 1/(1 - p^-2)
  u64 cutoff = 0;

  // certified constants for the eps engine
  Rational r_lo() const { return ratio_lower.lo; }
  Rational r_hi() const { return ratio_upper.hi; }
  Rational sigma3_lo() const { return s3_lower.lo; }
};

namespace detail {

// Sum over m > cutoff, m = r (mod q), of 1/(m^2 - 1): first term plus an integral.
inline Rational progression_tail(u64 cutoff, u64 r, u64 q) {
  u64 m0 = cutoff + 1;
  while (m0 % q != r % q) ++m0;
  Integer m(std::to_string(m0));
  return Rational(1, m * m - 1) + Rational(1, Integer(q) * (m - 1));
}

}  // namespace detail

inline RatioEnclosure ratio_bounds(u64 cutoff) {
  if (cutoff < 5) throw DomainError("ratio_bounds: cutoff must be >= 5");
  constexpr unsigned long bits = 256;
  RatInterval r7 = RatInterval::point(1), r5 = r7, l3 = r7, u3 = r7, l4 = r7, u4 = r7;
  PrimeTable pt(cutoff);
  for (std::uint32_t p32 : pt.primes()) {
    u64 p = p32;
    if (p <= 3) continue;
    Integer p2 = Integer(p) * p;
    RatInterval down = RatInterval::point(make_rational(p2 - 1, p2));  // 1 - p^-2
    RatInterval up = RatInterval::point(make_rational(p2, p2 - 1));    // 1/(1 - p^-2)
    if (p % 12 == 7) r7 = round_outward(r7 * RatInterval::point(make_rational(p2 - 1, p2 + 1)), bits);
    if (p % 12 == 5) r5 = round_outward(r5 * RatInterval::point(make_rational(p2 + 1, p2 - 1)), bits);
    if (p % 3 == 2) l3 = round_outward(l3 * down, bits);
    if (p % 3 == 1) u3 = round_outward(u3 * up, bits);
    if (p % 4 == 3) l4 = round_outward(l4 * down, bits);
    if (p % 4 == 1) u4 = round_outward(u4 * up, bits);
  }
  // Tails: for the remaining primes, |log factor| <= c/(p^2 - 1) with c = 2 for
  // the ratio products and c = 1 otherwise; sum over the whole progression.
  auto shrink = [&](const RatInterval& x, const Rational& t) {
    RatInterval f = interval_exp(RatInterval(-t, 0));
    return RatInterval(x.lo * f.lo, x.hi);
  };
  auto grow = [&](const RatInterval& x, const Rational& t) {
    RatInterval f = interval_exp(RatInterval(0, t));
    return RatInterval(x.lo, x.hi * f.hi);
  };
  RatioEnclosure e;
  e.cutoff = cutoff;
  e.ratio_lower = shrink(r7, 2 * detail::progression_tail(cutoff, 7, 12));
  e.ratio_upper = grow(r5, 2 * detail::progression_tail(cutoff, 5, 12));
  e.s3_lower = shrink(l3, detail::progression_tail(cutoff, 5, 6));
  e.s3_upper = grow(u3, detail::progression_tail(cutoff, 1, 6));
  e.s4_lower = shrink(l4, detail::progression_tail(cutoff, 3, 4));
  e.s4_upper = grow(u4, detail::progression_tail(cutoff, 1, 4));
  return e;
}

// ---------------------------------------------------------------------------
// Certified eps table.

struct EisCase {
  ExpSpec a, b;
  Side side;
};

struct CaseBound {
  EisCase c;
  bool feasible = false;
  Rational eps;  // certified: eis >= eps n^2 throughout the case
  SignClass worst{1, 1, 1, 1};
  QuadElem x3_lo, x4_lo;  // normalized lower bounds in the worst class
  std::string label() const;
};

inline std::string spec_label(const ExpSpec& s, char name) {
  return std::string(1, name) + (s.tail ? ">=" : "=") + std::to_string(s.value);
}

inline std::string CaseBound::label() const { return spec_label(c.a, 'a') + "," + spec_label(c.b, 'b'); }

// Lower bound on a_eis/n^2 (v = x) or b_eis/n^2 (v = y) over one case.
inline CaseBound case_bound(const BasisVector& v, const EisCase& c, const RatioEnclosure& re) {
  CaseBound out;
  out.c = c;
  bool first = true;
  QuadElem best;
  for (int s3 : {1, -1})
    for (int s4 : {1, -1})
      for (int pa : {1, -1})
        for (int pb : {1, -1}) {
          if (!c.a.tail && pa != (c.a.value % 2 ? -1 : 1)) continue;
          if (!c.b.tail && pb != (c.b.value % 2 ? -1 : 1)) continue;
          // a-side: odd n with chi4(n) = 1 has a_eis = 0 and is certified separately
          if (c.side == Side::a && !c.a.tail && c.a.value == 0 && pb * s4 == 1) continue;
          SignClass sc{s3, s4, pa, pb};
          auto [m3, m4] = eis_monomials(v, c.a, c.b, sc);
          QuadElem x3 = monomial_lower_bound(m3, c.a, c.b);
          QuadElem x4 = monomial_lower_bound(m4, c.a, c.b);
          Rational r = quad_sign(x4) >= 0 ? re.r_lo() : re.r_hi();
          QuadElem m = x3 + x4 * r;
          if (first || quad_cmp(m, best) < 0) {
            first = false;
            best = m;
            out.worst = sc;
            out.x3_lo = x3;
            out.x4_lo = x4;
          }
        }
  if (first) {  // every class excluded
    out.feasible = true;
    out.eps = 0;
    return out;
  }
  out.feasible = quad_sign(best) > 0;
  RatInterval mi = enclose(best, Rational(1, Integer(1) << 200));
  out.eps = out.feasible ? Rational(re.sigma3_lo() * mi.lo) : Rational(mi.lo);
  return out;
}

struct EpsRow {
  std::string label;  // e.g. "b=0,a=1" or "b>=1,a>=4"
  ExpSpec a, b;       // the row's exponent class
  Side side;
  std::vector<CaseBound> parts;
  bool feasible = true;
  Rational eps;  // minimum over parts
};

enum class EpsStrategy {
  shallow,  // hand split: a = 4 apart from a >= 5, otherwise one tail per row
  deep      // exact enumeration to (A, B), tails beyond
};

namespace detail {

inline std::vector<EisCase> shallow_parts(ExpSpec a, ExpSpec b, Side side) {
  std::vector<EisCase> out;
  if (!a.tail && !b.tail) return {{a, b, side}};
  if (a.tail && !b.tail) return {{ExpSpec::exact(4), b, side}, {ExpSpec::at_least(5), b, side}};
  if (!a.tail && b.tail) return {{a, ExpSpec::at_least(1), side}};
  return {{ExpSpec::at_least(4), ExpSpec::at_least(1), side}};
}

inline std::vector<EisCase> deep_parts(ExpSpec a, ExpSpec b, Side side, int A, int B) {
  std::vector<int> as, bs;
  if (a.tail)
    for (int i = a.value; i <= A; ++i) as.push_back(i);
  else
    as.push_back(a.value);
  if (b.tail)
    for (int j = b.value; j <= B; ++j) bs.push_back(j);
  else
    bs.push_back(b.value);
  std::vector<EisCase> out;
  for (int i : as)
    for (int j : bs) out.push_back({ExpSpec::exact(i), ExpSpec::exact(j), side});
  if (a.tail)
    for (int j : bs) out.push_back({ExpSpec::at_least(A + 1), ExpSpec::exact(j), side});
  if (b.tail)
    for (int i : as) out.push_back({ExpSpec::exact(i), ExpSpec::at_least(B + 1), side});
  if (a.tail && b.tail) out.push_back({ExpSpec::at_least(A + 1), ExpSpec::at_least(B + 1), side});
  return out;
}

}  // namespace detail

// The ten rows (b in {0, >=1}) x (a in {0, 1, 2, 3, >=4}).
inline std::vector<std::pair<ExpSpec, ExpSpec>> eps_row_classes() {
  std::vector<std::pair<ExpSpec, ExpSpec>> rows;
  for (ExpSpec b : {ExpSpec::exact(0), ExpSpec::at_least(1)})
    for (ExpSpec a : {ExpSpec::exact(0), ExpSpec::exact(1), ExpSpec::exact(2), ExpSpec::exact(3), ExpSpec::at_least(4)})
      rows.push_back({a, b});
  return rows;
}

inline std::vector<EpsRow> eis_lower_bound_table(const BasisVector& v, Side side, const RatioEnclosure& re,
                                                 EpsStrategy strategy, int A = 40, int B = 25) {
  if (strategy == EpsStrategy::deep && (A < 8 || B < 8)) throw DomainError("enumeration depth must be >= 8");
  std::vector<EpsRow> rows;
  for (auto [a, b] : eps_row_classes()) {
    EpsRow row;
    row.label = (b.tail ? "b>=1" : "b=0") + std::string(",") + (a.tail ? "a>=4" : "a=" + std::to_string(a.value));
    row.a = a;
    row.b = b;
    row.side = side;
    auto parts = strategy == EpsStrategy::shallow ? detail::shallow_parts(a, b, side)
                                                   : detail::deep_parts(a, b, side, A, B);
    bool first = true;
    for (auto& c : parts) {
      CaseBound cb = case_bound(v, c, re);
      row.feasible = row.feasible && cb.feasible;
      if (first || cb.eps < row.eps) row.eps = cb.eps;
      first = false;
      row.parts.push_back(std::move(cb));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Row of the table containing n = 2^a 3^b n0.
inline std::size_t eps_row_index(int a, int b) {
  return static_cast<std::size_t>((b >= 1 ? 5 : 0) + (a >= 4 ? 4 : a));
}

inline Rational eps_min(const std::vector<EpsRow>& rows) {
  Rational m = rows.front().eps;
  for (auto& r : rows)
    if (r.eps < m) m = r.eps;
  return m;
}

// The eps engine reads the ratio enclosure at this cutoff: at 10^5 the crude
// tail costs about 6e-9 in the (a = 2, b >= 1) case.
inline constexpr u64 kEpsRatioCutoff = 1'000'000;

struct EpsTables {
  RatioEnclosure ratios;
  EpsStrategy strategy = EpsStrategy::shallow;
  std::vector<EpsRow> a_rows, b_rows;
  Rational eps_a, eps_b;  // minima over the rows
};

// Both sides at once; y is the transformed vector W x.
inline EpsTables eps_tables(const BasisVector& x, const BasisVector& y, EpsStrategy strategy,
                            u64 cutoff = kEpsRatioCutoff) {
  EpsTables t;
  t.ratios = ratio_bounds(cutoff);
  t.strategy = strategy;
  t.a_rows = eis_lower_bound_table(x, Side::a, t.ratios, strategy);
  t.b_rows = eis_lower_bound_table(y, Side::b, t.ratios, strategy);
  t.eps_a = eps_min(t.a_rows);
  t.eps_b = eps_min(t.b_rows);
  return t;
}

}  // namespace lpcert
