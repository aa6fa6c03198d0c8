#pragma once

// Exact rationals (GMP), elements of Q(sqrt d), rational intervals and
// exact Gaussian elimination over Q(sqrt d).

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpcert {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps results canonical

struct FieldMismatch : std::logic_error {
  using std::logic_error::logic_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct RankDeficiency : std::runtime_error {
  std::size_t rank;
  RankDeficiency(std::size_t r, const std::string& msg) : std::runtime_error(msg), rank(r) {}
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

// Accepts "p", "p/q", or a decimal literal such as "-0.0091177" or "8.7536e-6".
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer n, d;
    if (n.set_str(text.substr(0, slash), 10) != 0 || d.set_str(text.substr(slash + 1), 10) != 0)
      throw DomainError("bad rational literal '" + text + "'");
    return make_rational(n, d);
  }
  std::string s = text;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(s.size() - dot - 1);
    s.erase(dot, 1);
  }
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0) throw DomainError("bad rational literal '" + text + "'");
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  return exp10 < 0 ? make_rational(n, p10) : Rational(n * p10);
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer pow10(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// ---------------------------------------------------------------------------
// Q(sqrt d).  d == 0 is admitted as the degenerate "rational" field with b == 0;
// it mixes freely with any d because its elements are plain rationals.

class QuadElem {
 public:
  QuadElem() = default;
  explicit QuadElem(long d, Rational a = 0, Rational b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {
    if (d_ == 0 && b_ != 0) throw DomainError("nonzero sqrt part in the rational field");
    if (d_ != 0 && !squarefree(d_)) throw DomainError("d must be squarefree: " + std::to_string(d_));
  }
  static QuadElem rational(Rational a, long d = 0) { return QuadElem(d, std::move(a), 0); }

  long d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadElem conj() const { return QuadElem(d_, a_, -b_, Raw{}); }
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }

  QuadElem& operator+=(const QuadElem& o) {
    d_ = join(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadElem& operator-=(const QuadElem& o) {
    d_ = join(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadElem& operator*=(const QuadElem& o) {
    long d = join(o);
    Rational na = a_ * o.a_ + d * (b_ * o.b_);
    Rational nb = a_ * o.b_ + b_ * o.a_;
    d_ = d;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QuadElem& operator*=(const Rational& r) {
    a_ *= r;
    b_ *= r;
    return *this;
  }
  QuadElem inverse() const {
    Rational n = norm();
    if (n == 0) throw DomainError("division by zero in Q(sqrt d)");
    return QuadElem(d_, a_ / n, -b_ / n, Raw{});
  }
  QuadElem& operator/=(const QuadElem& o) { return *this *= o.inverse(); }
  QuadElem operator-() const { return QuadElem(d_, -a_, -b_, Raw{}); }

  friend QuadElem operator+(QuadElem l, const QuadElem& r) { return l += r; }
  friend QuadElem operator-(QuadElem l, const QuadElem& r) { return l -= r; }
  friend QuadElem operator*(QuadElem l, const QuadElem& r) { return l *= r; }
  friend QuadElem operator/(QuadElem l, const QuadElem& r) { return l /= r; }
  friend QuadElem operator*(QuadElem l, const Rational& r) { return l *= r; }
  friend QuadElem operator*(const Rational& r, QuadElem l) { return l *= r; }
  friend bool operator==(const QuadElem& l, const QuadElem& r) {
    if (l.b_ != 0 || r.b_ != 0) {
      if (l.d_ != r.d_) return false;
    }
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend bool operator!=(const QuadElem& l, const QuadElem& r) { return !(l == r); }

  // Same field, switching the tag of a rational element.
  QuadElem in_field(long d) const {
    if (b_ != 0 && d != d_) throw FieldMismatch("cannot move element between fields");
    return QuadElem(d, a_, b_);
  }

  std::string to_string() const {
    if (b_ == 0) return a_.get_str();
    return "(" + a_.get_str() + ") + (" + b_.get_str() + ")*sqrt(" + std::to_string(d_) + ")";
  }

  static bool squarefree(long d) {
    unsigned long m = d < 0 ? static_cast<unsigned long>(-d) : static_cast<unsigned long>(d);
    if (m == 1) return d != 1;
    for (unsigned long p = 2; p * p <= m; ++p)
      if (m % (p * p) == 0) return false;
    return true;
  }

 private:
  struct Raw {};
  QuadElem(long d, Rational a, Rational b, Raw) : d_(d), a_(std::move(a)), b_(std::move(b)) {}

  long join(const QuadElem& o) const {
    if (d_ == o.d_) return d_;
    if (o.b_ == 0 && (o.d_ == 0 || d_ == 0 || b_ == 0)) return d_ != 0 ? d_ : o.d_;
    if (b_ == 0 && d_ == 0) return o.d_;
    throw FieldMismatch("Q(sqrt " + std::to_string(d_) + ") vs Q(sqrt " + std::to_string(o.d_) + ")");
  }

  long d_ = 0;
  Rational a_ = 0;
  Rational b_ = 0;
};

// Exact sign of a + b sqrt(d) for d > 0 (or any rational element).
inline int quad_sign(const QuadElem& x) {
  int sa = sgn(x.a());
  int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (x.d() <= 0) throw DomainError("quad_sign needs a real field");
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  Rational a2 = x.a() * x.a();
  Rational db2 = x.d() * (x.b() * x.b());
  int c = cmp(a2, db2);  // |a| vs |b| sqrt d
  if (c == 0) return 0;
  if (sa > 0) return c > 0 ? 1 : -1;
  return c > 0 ? -1 : 1;
}

inline int quad_cmp(const QuadElem& l, const QuadElem& r) { return quad_sign(l - r); }

// Nearest double, for display and floating-point prefilters only.
inline double to_double(const QuadElem& x) {
  double v = x.a().get_d();
  if (x.b() != 0) v += x.b().get_d() * std::sqrt(static_cast<double>(x.d()));
  return v;
}

inline Rational pow10_rat(long e) {
  return e >= 0 ? Rational(pow10(static_cast<unsigned long>(e)))
                : make_rational(Integer(1), pow10(static_cast<unsigned long>(-e)));
}

enum class Rounding { down, up, nearest };
enum class DigitMode { significant, fractional };

namespace detail {

// floor(x) for x in a real quadratic field, exactly.
inline Integer quad_floor(const QuadElem& x) {
  if (x.b() == 0) return floor_of(x.a());
  // approximate b sqrt d by integer square root of b^2 d scaled by the denominator
  const Rational& b = x.b();
  Integer den = b.get_den();
  Integer rad = b.get_num() * b.get_num() * x.d();
  Integer s;
  mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());  // s <= |num b| sqrt d < s + 1
  Rational approx = x.a() + make_rational(sgn(b) > 0 ? s : Integer(-s), den);
  Integer m = floor_of(approx);
  while (quad_sign(x - QuadElem::rational(Rational(m))) < 0) --m;
  while (quad_sign(x - QuadElem::rational(Rational(m + 1))) >= 0) ++m;
  return m;
}

inline std::string format_scaled(Integer v, unsigned long places) {
  bool neg = v < 0;
  if (neg) v = -v;
  std::string digits = v.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return (neg ? "-" : "") + out;
}

}  // namespace detail

// Decimal expansion with directed rounding.  In significant mode `digits`
// counts significant digits; in fractional mode it counts digits after the point.
inline std::string quad_to_decimal(const QuadElem& x, unsigned long digits, Rounding dir,
                                   DigitMode mode = DigitMode::significant) {
  if (digits == 0) throw DomainError("digits must be positive");
  if (x.b() != 0 && x.d() < 0) throw DomainError("decimal output needs a real field");
  unsigned long places = digits;
  if (mode == DigitMode::significant && !x.is_zero()) {
    // leading digit position k: 10^(k-1) <= |x| < 10^k
    QuadElem ax = quad_sign(x) < 0 ? -x : x;
    double est = std::log10(to_double(ax));
    long k = std::isfinite(est) ? static_cast<long>(std::floor(est)) + 1 : 0;
    while (quad_cmp(ax, QuadElem::rational(pow10_rat(k))) >= 0) ++k;
    while (quad_cmp(ax, QuadElem::rational(pow10_rat(k - 1))) < 0) --k;
    long pl = static_cast<long>(digits) - k;
    places = pl < 0 ? 0 : static_cast<unsigned long>(pl);
  }
  QuadElem scaled = x * Rational(pow10(places));
  Integer v;
  switch (dir) {
    case Rounding::down:
      v = detail::quad_floor(scaled);
      break;
    case Rounding::up:
      v = -detail::quad_floor(-scaled);
      break;
    case Rounding::nearest:
      v = detail::quad_floor(scaled + QuadElem::rational(Rational(1, 2)));
      break;
  }
  return detail::format_scaled(v, places);
}

inline std::string rational_to_decimal(const Rational& q, unsigned long digits, Rounding dir,
                                       DigitMode mode = DigitMode::significant) {
  return quad_to_decimal(QuadElem::rational(q), digits, dir, mode);
}

// ---------------------------------------------------------------------------
// Rational intervals.

struct RatInterval {
  Rational lo, hi;

  RatInterval() = default;
  RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw DomainError("interval with lo > hi");
  }
  static RatInterval point(const Rational& q) { return {q, q}; }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend RatInterval operator+(const RatInterval& l, const RatInterval& r) { return {l.lo + r.lo, l.hi + r.hi}; }
  friend RatInterval operator-(const RatInterval& l, const RatInterval& r) { return {l.lo - r.hi, l.hi - r.lo}; }
  friend RatInterval operator*(const RatInterval& l, const RatInterval& r) {
    Rational c[4] = {l.lo * r.lo, l.lo * r.hi, l.hi * r.lo, l.hi * r.hi};
    Rational mn = c[0], mx = c[0];
    for (auto& v : c) {
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    return {mn, mx};
  }
  friend RatInterval operator/(const RatInterval& l, const RatInterval& r) {
    if (r.lo <= 0 && r.hi >= 0) throw DomainError("interval division by an interval containing 0");
    return l * RatInterval(1 / r.hi, 1 / r.lo);
  }
};

// Outward rounding onto dyadic rationals with `bits` fractional bits; keeps
// long products from growing without bound.
inline RatInterval round_outward(const RatInterval& x, unsigned long bits) {
  Integer scale = Integer(1) << bits;
  Rational l = x.lo * scale, h = x.hi * scale;
  return {make_rational(floor_of(l), scale), make_rational(ceil_of(h), scale)};
}

// MPFR-backed elementary functions on intervals.  Every call rounds the lower
// endpoint toward -inf and the upper endpoint toward +inf.
namespace detail {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  Rational get() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v);
    return q;
  }
};

}  // namespace detail

inline constexpr mpfr_prec_t kIntervalPrecision = 256;

inline RatInterval interval_log(const RatInterval& x, mpfr_prec_t prec = kIntervalPrecision) {
  if (x.lo <= 0) throw DomainError("log of a nonpositive interval");
  detail::Mpfr l(prec), h(prec);
  mpfr_set_q(l.v, x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_log(l.v, l.v, MPFR_RNDD);
  mpfr_set_q(h.v, x.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_log(h.v, h.v, MPFR_RNDU);
  return {l.get(), h.get()};
}

inline RatInterval interval_exp(const RatInterval& x, mpfr_prec_t prec = kIntervalPrecision) {
  detail::Mpfr l(prec), h(prec);
  mpfr_set_q(l.v, x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(l.v, l.v, MPFR_RNDD);
  mpfr_set_q(h.v, x.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(h.v, h.v, MPFR_RNDU);
  return {l.get(), h.get()};
}

inline RatInterval log_of(const Rational& q) { return interval_log(RatInterval::point(q)); }

// ---------------------------------------------------------------------------
// Constants.

struct SqrtOf {
  long d;
};
struct Pi {};

// sqrt(d) via the integer square root of d * 4^k.
inline RatInterval enclose_constant(SqrtOf c, const Rational& precision) {
  if (precision <= 0) throw DomainError("precision must be positive");
  if (c.d < 0) throw DomainError("sqrt of a negative number");
  unsigned long k = 0;
  while (Rational(1, Integer(1) << k) > precision) ++k;
  Integer scale = Integer(1) << k;
  Integer rad = Integer(c.d) * scale * scale;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
  if (s * s == rad) return RatInterval::point(make_rational(s, scale));
  return {make_rational(s, scale), make_rational(s + 1, scale)};
}

// pi = 16 atan(1/5) - 4 atan(1/239), alternating series with explicit remainders.
inline RatInterval enclose_constant(Pi, const Rational& precision) {
  if (precision <= 0) throw DomainError("precision must be positive");
  auto atan_inv = [&](long m, const Rational& tol) {
    // atan(1/m) = sum (-1)^j / ((2j+1) m^(2j+1)); stop when the next term < tol
    Rational sum = 0;
    Integer mp = m;  // m^(2j+1)
    Integer m2 = Integer(m) * m;
    for (long j = 0;; ++j) {
      Rational term(1, Integer(2 * j + 1) * mp);
      if (term < tol) {
        // remainder lies between 0 and the first omitted term, with its sign
        return (j % 2 == 0) ? RatInterval(sum, sum + term) : RatInterval(sum - term, sum);
      }
      sum += (j % 2 == 0) ? term : Rational(-term);
      mp *= m2;
    }
  };
  Rational tol = precision / 64;
  RatInterval a = atan_inv(5, tol), b = atan_inv(239, tol);
  return RatInterval::point(16) * a - RatInterval::point(4) * b;
}

// Interval hull of an element of a real quadratic field.
inline RatInterval enclose(const QuadElem& x, const Rational& precision) {
  if (x.b() == 0) return RatInterval::point(x.a());
  if (x.d() < 0) throw DomainError("enclosure of a non-real element");
  Rational ab = abs_of(x.b());
  RatInterval s = enclose_constant(SqrtOf{x.d()}, precision / ab);
  return RatInterval::point(x.a()) + RatInterval::point(x.b()) * s;
}

// ---------------------------------------------------------------------------
// Dense matrices over Q(sqrt d) and exact elimination.

class QuadMatrix {
 public:
  QuadMatrix(std::size_t rows, std::size_t cols, long d)
      : rows_(rows), cols_(cols), d_(d), e_(rows * cols, QuadElem::rational(0, d)) {
    if (rows == 0 || cols == 0) throw DomainError("empty matrix");
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long d() const { return d_; }
  QuadElem& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const QuadElem& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<QuadElem> apply(const std::vector<QuadElem>& v) const {
    if (v.size() != cols_) throw DomainError("dimension mismatch");
    std::vector<QuadElem> out(rows_, QuadElem::rational(0, d_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend QuadMatrix operator*(const QuadMatrix& l, const QuadMatrix& r) {
    if (l.cols_ != r.rows_) throw DomainError("dimension mismatch");
    QuadMatrix out(l.rows_, r.cols_, l.d_);
    for (std::size_t i = 0; i < l.rows_; ++i)
      for (std::size_t k = 0; k < l.cols_; ++k) {
        if (l(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < r.cols_; ++j)
          if (!r(k, j).is_zero()) out(i, j) += l(i, k) * r(k, j);
      }
    return out;
  }

  static QuadMatrix identity(std::size_t n, long d) {
    QuadMatrix m(n, n, d);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = QuadElem::rational(1, d);
    return m;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != QuadElem::rational(i == j ? 1 : 0)) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  long d_;
  std::vector<QuadElem> e_;
};

struct EliminationResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;           // pivot column of each pivot row
  std::vector<std::vector<QuadElem>> kernel;  // basis of the right null space
};

// Reduced row echelon form in place; returns rank, pivots and a kernel basis.
inline EliminationResult row_reduce(QuadMatrix& m, std::vector<QuadElem>* rhs = nullptr) {
  EliminationResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    }
    QuadElem inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    if (rhs) (*rhs)[r] *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      QuadElem f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<QuadElem> v(m.cols(), QuadElem::rational(0, m.d()));
    v[f] = QuadElem::rational(1, m.d());
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = -m(i, f);
    res.kernel.push_back(std::move(v));
  }
  return res;
}

inline std::vector<QuadElem> solve_linear_system(const QuadMatrix& A, const std::vector<QuadElem>& rhs) {
  if (A.rows() != A.cols()) throw DomainError("solve_linear_system needs a square matrix");
  if (rhs.size() != A.rows()) throw DomainError("rhs length mismatch");
  QuadMatrix m = A;
  std::vector<QuadElem> b = rhs;
  auto res = row_reduce(m, &b);
  if (res.rank < A.cols())
    throw RankDeficiency(res.rank, "singular system: rank " + std::to_string(res.rank) + " < " +
                                       std::to_string(A.cols()));
  return b;
}

}  // namespace lpcert
