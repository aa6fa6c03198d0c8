#pragma once

// Truncated q-series in the nome u = e^{pi i z / 4}, Jacobi theta functions,
// lattice theta series with an enumeration oracle, and a numeric check of
// the Fourier pairing between a_n and b_n on Gaussians.

#include "lpcert/basis.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lpcert {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// QSeries: coefficients of u^0 .. u^{order-1}, exact int64 with overflow checks.

class QSeries {
 public:
  explicit QSeries(std::size_t order) : c_(order, 0) {
    if (order == 0) throw DomainError("series order must be >= 1");
  }

  std::size_t order() const { return c_.size(); }
  long long operator[](std::size_t e) const { return e < c_.size() ? c_[e] : 0; }
  const std::vector<long long>& coeffs() const { return c_; }

  void add_term(std::size_t e, long long v) {
    if (e < c_.size()) c_[e] = checked_add(c_[e], v);
  }

  QSeries truncated(std::size_t order) const {
    if (order > c_.size()) throw DomainError("cannot extend a truncated series");
    QSeries r(order);
    std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order), r.c_.begin());
    return r;
  }

  // z -> k z, i.e. u^e -> u^{k e}; the order is kept.
  QSeries scaled(std::size_t k) const {
    if (k == 0) throw DomainError("scale must be positive");
    QSeries r(c_.size());
    for (std::size_t e = 0; e * k < c_.size(); ++e) r.c_[e * k] = c_[e];
    return r;
  }

  // Exact division by d; a remainder means the caller's formula is wrong.
  QSeries divided(long long d) const {
    QSeries r(c_.size());
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] % d != 0) throw std::logic_error("inexact series division at u^" + std::to_string(e));
      r.c_[e] = c_[e] / d;
    }
    return r;
  }

  QSeries& operator+=(const QSeries& o) { return combine(o, 1); }
  QSeries& operator-=(const QSeries& o) { return combine(o, -1); }
  QSeries& operator*=(long long s) {
    for (auto& v : c_) v = checked_mul(v, s);
    return *this;
  }
  friend QSeries operator+(QSeries l, const QSeries& r) { return l += r; }
  friend QSeries operator-(QSeries l, const QSeries& r) { return l -= r; }
  friend QSeries operator*(QSeries l, long long s) { return l *= s; }
  friend QSeries operator*(long long s, QSeries l) { return l *= s; }

  // Product over the nonzero supports; theta powers stay sparse for a while.
  friend QSeries operator*(const QSeries& l, const QSeries& r) {
    std::size_t order = std::min(l.order(), r.order());
    QSeries out(order);
    std::vector<std::size_t> rs;
    for (std::size_t j = 0; j < order; ++j)
      if (r.c_[j] != 0) rs.push_back(j);
    for (std::size_t i = 0; i < order; ++i) {
      if (l.c_[i] == 0) continue;
      for (std::size_t j : rs) {
        if (i + j >= order) break;
        out.c_[i + j] = checked_add(out.c_[i + j], checked_mul(l.c_[i], r.c_[j]));
      }
    }
    return out;
  }

  QSeries pow(unsigned n) const {
    QSeries r(c_.size());
    r.c_[0] = 1;
    QSeries b = *this;
    for (; n > 0; n >>= 1) {
      if (n & 1) r = r * b;
      if (n > 1) b = b * b;
    }
    return r;
  }

  // First exponent where the two series differ, within the common order.
  friend std::optional<std::size_t> first_difference(const QSeries& l, const QSeries& r) {
    std::size_t order = std::min(l.order(), r.order());
    for (std::size_t e = 0; e < order; ++e)
      if (l.c_[e] != r.c_[e]) return e;
    return std::nullopt;
  }
  friend bool operator==(const QSeries& l, const QSeries& r) {
    return l.order() == r.order() && !first_difference(l, r);
  }

 private:
  static long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
  }
  static long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
  }
  QSeries& combine(const QSeries& o, long long sign) {
    if (o.order() < order()) c_.resize(o.order());
    for (std::size_t e = 0; e < c_.size(); ++e) c_[e] = checked_add(c_[e], checked_mul(sign, o.c_[e]));
    return *this;
  }

  std::vector<long long> c_;
};

// ---------------------------------------------------------------------------
// Jacobi theta functions.
//   theta2 = sum u^{(2m+1)^2},  theta3 = sum u^{4m^2},  theta4 = sum (-1)^m u^{4m^2}

inline QSeries jacobi_theta(int which, std::size_t order) {
  QSeries s(order);
  switch (which) {
    case 2:
      for (long long m = 0; static_cast<std::size_t>((2 * m + 1) * (2 * m + 1)) < order; ++m)
        s.add_term(static_cast<std::size_t>((2 * m + 1) * (2 * m + 1)), 2);
      break;
    case 3:
    case 4:
      s.add_term(0, 1);
      for (long long m = 1; static_cast<std::size_t>(4 * m * m) < order; ++m)
        s.add_term(static_cast<std::size_t>(4 * m * m), which == 4 && (m % 2) ? -2 : 2);
      break;
    default: throw DomainError("jacobi_theta: which must be 2, 3 or 4");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lattice theta series sum_v u^{4|v|^2}.

struct ThetaLattice {
  enum class Kind { Zn, Dn, DnStar, E6 } kind;
  int n;
  static ThetaLattice Zn(int n) { return {Kind::Zn, n}; }
  static ThetaLattice Dn(int n) { return {Kind::Dn, n}; }
  static ThetaLattice DnStar(int n) { return {Kind::DnStar, n}; }
  static ThetaLattice E6() { return {Kind::E6, 6}; }
  std::string name() const {
    switch (kind) {
      case Kind::Zn: return "Z" + std::to_string(n);
      case Kind::Dn: return "D" + std::to_string(n);
      case Kind::DnStar: return "D" + std::to_string(n) + "*";
      case Kind::E6: return "E6";
    }
    return "?";
  }
};

// Weight-3 basis combination as a series: the q^m coefficient sits at u^{8m}.
inline QSeries basis_series(const BasisVector& v, std::size_t order) {
  QSeries s(order);
  for (std::size_t m = 0; 8 * m < order; ++m) {
    QuadElem c = eis_part(v, static_cast<u64>(m));
    if (!c.is_rational() || c.a().get_den() != 1 || !c.a().get_num().fits_slong_p())
      throw DomainError("basis combination is not an integral theta series at q^" + std::to_string(m));
    s.add_term(8 * m, c.a().get_num().get_si());
  }
  for (int j = 1; j <= kBasisSize; ++j)
    if (!is_eisenstein(j) && !v[j].is_zero()) throw DomainError("basis_series handles Eisenstein combinations only");
  return s;
}

inline QSeries lattice_theta(ThetaLattice l, std::size_t order) {
  if (l.n < 1) throw DomainError("lattice dimension must be >= 1");
  auto n = static_cast<unsigned>(l.n);
  switch (l.kind) {
    case ThetaLattice::Kind::Zn: return jacobi_theta(3, order).pow(n);
    case ThetaLattice::Kind::Dn: return (jacobi_theta(3, order).pow(n) + jacobi_theta(4, order).pow(n)).divided(2);
    case ThetaLattice::Kind::DnStar: return jacobi_theta(2, order).pow(n) + jacobi_theta(3, order).pow(n);
    case ThetaLattice::Kind::E6: return basis_series(lattice_combination(Lattice::E6), order);
  }
  throw DomainError("unknown lattice");
}

// ---------------------------------------------------------------------------
// Identities.

enum class ThetaIdentity { d6_relation, jacobi4, theta34, theta24, theta22, theta32, theta42 };

inline constexpr ThetaIdentity kThetaIdentities[] = {ThetaIdentity::d6_relation, ThetaIdentity::jacobi4,
                                                     ThetaIdentity::theta34,     ThetaIdentity::theta24,
                                                     ThetaIdentity::theta22,     ThetaIdentity::theta32,
                                                     ThetaIdentity::theta42};

inline std::string identity_name(ThetaIdentity id) {
  switch (id) {
    case ThetaIdentity::d6_relation: return "D6-relation";
    case ThetaIdentity::jacobi4: return "jacobi4";
    case ThetaIdentity::theta34: return "theta34";
    case ThetaIdentity::theta24: return "theta24";
    case ThetaIdentity::theta22: return "theta22";
    case ThetaIdentity::theta32: return "theta32";
    case ThetaIdentity::theta42: return "theta42";
  }
  return "?";
}

inline ThetaIdentity parse_identity(const std::string& s) {
  for (ThetaIdentity id : kThetaIdentities)
    if (identity_name(id) == s) return id;
  throw DomainError("unknown identity " + s);
}

struct IdentityResult {
  std::string name;
  std::size_t order;
  std::optional<std::size_t> first_failure;  // exponent of u
  bool pass() const { return !first_failure; }
};

// theta_Dn(z) + (n-2) theta_Dn*(s z) against (n-1) theta_Zn(2z).  Holds for
// n = 6, s = 4; other (n, s) agree in the constant term only.
inline IdentityResult dn_relation(int n, std::size_t s, std::size_t order) {
  QSeries lhs = lattice_theta(ThetaLattice::Dn(n), order) + (n - 2) * lattice_theta(ThetaLattice::DnStar(n), order).scaled(s);
  QSeries rhs = (n - 1) * lattice_theta(ThetaLattice::Zn(n), order).scaled(2);
  return {"D" + std::to_string(n) + "-relation(s=" + std::to_string(s) + ")", order, first_difference(lhs, rhs)};
}

inline IdentityResult verify_identity(ThetaIdentity id, std::size_t order) {
  if (id == ThetaIdentity::d6_relation) {
    IdentityResult r = dn_relation(6, 4, order);
    r.name = identity_name(id);
    return r;
  }
  QSeries t2 = jacobi_theta(2, order), t3 = jacobi_theta(3, order), t4 = jacobi_theta(4, order);
  QSeries lhs(order), rhs(order);
  switch (id) {
    case ThetaIdentity::jacobi4: lhs = t2.pow(4) + t4.pow(4), rhs = t3.pow(4); break;
    case ThetaIdentity::theta34: lhs = t3 + t4, rhs = 2 * t3.scaled(4); break;
    case ThetaIdentity::theta24: lhs = t3 - t4, rhs = 2 * t2.scaled(4); break;
    case ThetaIdentity::theta22: lhs = t3 * t3 - t4 * t4, rhs = 2 * t2.scaled(2).pow(2); break;
    case ThetaIdentity::theta32: lhs = t3 * t3 + t4 * t4, rhs = 2 * t3.scaled(2).pow(2); break;
    case ThetaIdentity::theta42: lhs = t3 * t4, rhs = t4.scaled(2).pow(2); break;
    case ThetaIdentity::d6_relation: break;
  }
  return {identity_name(id), order, first_difference(lhs, rhs)};
}

// ---------------------------------------------------------------------------
// Enumeration oracle.  The lattice Gram matrix is gram / den with gram
// integral; vectors are counted at u^{4 |v|^2}, which must be integral.

struct GramMatrix {
  std::vector<std::vector<long long>> g;
  long long den = 1;
};

// Gram matrix of the row basis B / sqrt(den).
inline GramMatrix gram_from_basis(const std::vector<std::vector<long long>>& rows, long long den = 1) {
  GramMatrix m{std::vector<std::vector<long long>>(rows.size(), std::vector<long long>(rows.size(), 0)), den};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t k = 0; k < rows[i].size(); ++k) m.g[i][j] += rows[i][k] * rows[j][k];
  return m;
}

inline GramMatrix standard_gram(ThetaLattice l) {
  const int n = l.n;
  auto unit = [n](int i, long long s = 1) {
    std::vector<long long> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = s;
    return v;
  };
  std::vector<std::vector<long long>> rows;
  switch (l.kind) {
    case ThetaLattice::Kind::Zn:
      for (int i = 0; i < n; ++i) rows.push_back(unit(i));
      return gram_from_basis(rows);
    case ThetaLattice::Kind::Dn:
      for (int i = 0; i + 1 < n; ++i) {
        auto v = unit(i);
        v[static_cast<std::size_t>(i + 1)] = -1;
        rows.push_back(v);
      }
      rows.push_back(unit(n - 2));
      rows.back()[static_cast<std::size_t>(n - 1)] = 1;
      return gram_from_basis(rows);
    case ThetaLattice::Kind::DnStar:
      // Z^{n-1} plus (1/2, ..., 1/2), doubled and divided back by den = 4
      for (int i = 0; i + 1 < n; ++i) rows.push_back(unit(i, 2));
      rows.emplace_back(static_cast<std::size_t>(n), 1);
      return gram_from_basis(rows, 4);
    case ThetaLattice::Kind::E6: {
      // Cartan matrix; chain 1-3-4-5-6 with node 2 attached to node 4
      GramMatrix m{std::vector<std::vector<long long>>(6, std::vector<long long>(6, 0)), 1};
      for (int i = 0; i < 6; ++i) m.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      for (auto [a, b] : {std::pair{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}}) {
        m.g[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = -1;
        m.g[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = -1;
      }
      return m;
    }
  }
  throw DomainError("unknown lattice");
}

namespace detail {

// Exact LDL^T pivots; all positive iff the matrix is positive definite.
inline bool positive_definite(const GramMatrix& m) {
  std::size_t n = m.g.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(m.g[i][j]));
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace detail

// Fincke-Pohst enumeration of all v with 4 v^T (gram/den) v < order.
inline QSeries gram_theta_oracle(const GramMatrix& m, std::size_t order) {
  const std::size_t n = m.g.size();
  if (n == 0 || m.den <= 0) throw DomainError("gram_theta_oracle: empty matrix or bad denominator");
  for (auto& row : m.g)
    if (row.size() != n) throw DomainError("gram_theta_oracle: matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.g[i][j] != m.g[j][i]) throw DomainError("gram_theta_oracle: matrix is not symmetric");
  if (!detail::positive_definite(m)) throw DomainError("gram_theta_oracle: matrix is not positive definite");

  // v^T G v = sum_i q[i][i] (v_i + sum_{j>i} q[i][j] v_j)^2
  std::vector<std::vector<long double>> q(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<long double>(m.g[i][j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  // integer bound on v^T gram v: 4 x < order * den
  const long long bound = (static_cast<long long>(order) * m.den - 1) / 4;
  const long double slack = 1e-9L * static_cast<long double>(bound + 1);
  QSeries out(order);
  std::vector<long long> v(n, 0);
  std::vector<long double> rem(n + 1, 0);
  rem[n] = static_cast<long double>(bound) + slack;

  auto exact_norm = [&] {
    __int128 s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(m.g[i][j]) * v[i] * v[j];
    return s;
  };
  auto recurse = [&](auto&& self, std::size_t level) -> void {
    std::size_t i = level - 1;
    long double center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<long double>(v[j]);
    long double r = std::sqrt(std::max(0.0L, rem[level]) / q[i][i]);
    auto lo = static_cast<long long>(std::ceil(center - r - 1e-9L));
    auto hi = static_cast<long long>(std::floor(center + r + 1e-9L));
    for (long long x = lo; x <= hi; ++x) {
      v[i] = x;
      long double t = static_cast<long double>(x) - center;
      rem[i] = rem[level] - q[i][i] * t * t;
      if (rem[i] < -slack) continue;
      if (i > 0) {
        self(self, i);
        continue;
      }
      __int128 norm = exact_norm();
      if (norm > bound) continue;
      __int128 e4 = 4 * norm;
      if (e4 % m.den != 0) throw DomainError("gram_theta_oracle: 4|v|^2 is not integral");
      out.add_term(static_cast<std::size_t>(e4 / m.den), 1);
    }
    v[i] = 0;
  };
  recurse(recurse, n);
  return out;
}

// ---------------------------------------------------------------------------
// Fourier pairing on Gaussians f(x) = e^{pi i |x|^2 z}:
//   sum a_n e^{pi i n z} = (2/sqrt N)^k (i/z)^k sum b_n e^{-4 pi i n / (N z)}

using HighFloat = boost::multiprecision::cpp_bin_float_50;
using HighComplex = boost::multiprecision::cpp_complex_50;

struct GaussianProbe {
  std::complex<double> z;
  std::size_t order = 5000;
  double tolerance = 1e-10;
};

struct ProbeResult {
  std::complex<double> z;
  std::size_t order;
  double error;      // |left - right| / |left|
  double tail;       // bound on the truncated tails, relative to |left|
};

struct FourierReport {
  std::vector<ProbeResult> probes;
  double max_error = 0;
};

struct CoefficientTable {
  std::vector<QuadElem> a, b;
  double envelope_a = 0, envelope_b = 0;  // |c_n| <= K n^2 for n >= 1
};

namespace detail {

inline HighFloat to_high(const Rational& q) {
  return HighFloat(q.get_num().get_str()) / HighFloat(q.get_den().get_str());
}

inline HighFloat to_high(const QuadElem& x) {
  HighFloat s = to_high(x.a());
  if (x.b() != 0) s += to_high(x.b()) * boost::multiprecision::sqrt(HighFloat(x.d()));
  return s;
}

// |eis part| <= zeta(2) n^2 sum |v_j|, |cusp part| <= C n sigma0(n) <= 2 C n^2.
inline double coefficient_envelope(const BasisVector& v) {
  double eis = 0;
  bool cusp = false;
  for (int j = 1; j <= kBasisSize; ++j) {
    if (v[j].is_zero()) continue;
    if (is_eisenstein(j)) eis += std::abs(to_double(v[j]));
    else cusp = true;
  }
  double k = 1.6449340668482264 * eis;
  if (cusp) k += 2 * to_double(QuadElem::rational(deligne_envelope(v).C, 3));
  return k * (1 + 1e-12);
}

inline std::vector<QuadElem> side_coefficients(const EigenDataSet* ds, const BasisVector& v, std::size_t count) {
  bool cusp = false;
  for (int j = 1; j <= kBasisSize; ++j)
    if (!is_eisenstein(j) && !v[j].is_zero()) cusp = true;
  if (cusp && !ds) throw ConfigError("cuspidal coefficients need eigen data");
  std::optional<CuspEvaluator> ev;
  if (cusp) ev.emplace(*ds);
  std::vector<QuadElem> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (n == 0) {
      out.push_back(eis_part(v, u64(0)));
      continue;
    }
    Factorization f = factorize(static_cast<u64>(n));
    QuadElem c = eis_part(v, f);
    if (cusp) c += cusp_part(*ev, v, f);
    out.push_back(c);
  }
  return out;
}

// K sum_{n >= M} n^2 r^n <= K M^2 r^M / (1 - r ((M+1)/M)^2)
inline HighFloat geometric_tail(double k, std::size_t m, const HighFloat& r) {
  if (m == 0) m = 1;
  HighFloat mm(m), q = r * ((mm + 1) / mm) * ((mm + 1) / mm);
  if (q >= 1) return HighFloat(std::numeric_limits<double>::infinity());
  return HighFloat(k) * mm * mm * boost::multiprecision::pow(r, static_cast<long>(m)) / (1 - q);
}

}  // namespace detail

inline CoefficientTable coefficient_table(const EigenDataSet* ds, const BasisVector& x, std::size_t count) {
  BasisVector y = transform_vector(x);
  return {detail::side_coefficients(ds, x, count), detail::side_coefficients(ds, y, count),
          detail::coefficient_envelope(x), detail::coefficient_envelope(y)};
}

inline ProbeResult fourier_probe(const CoefficientTable& t, const GaussianProbe& p, int k = 3, int level = 48) {
  if (!(p.z.imag() > 0)) throw DomainError("Gaussian probe needs Im z > 0");
  std::size_t order = std::min({p.order, t.a.size(), t.b.size()});
  using boost::multiprecision::abs;
  using boost::multiprecision::exp;
  const HighFloat pi = boost::math::constants::pi<HighFloat>();
  const HighComplex i(0, 1), z(HighFloat(p.z.real()), HighFloat(p.z.imag()));

  // left: sum a_n w^n with w = e^{pi i z}
  HighComplex w = exp(pi * i * z), left = 0, wn = 1;
  for (std::size_t n = 0; n < order; ++n, wn *= w) left += detail::to_high(t.a[n]) * wn;
  // right: (2/sqrt N)^k (i/z)^k sum b_n v^n with v = e^{-4 pi i / (N z)}
  HighComplex v = exp(-4 * pi * i / (HighFloat(level) * z)), sum = 0, vn = 1;
  for (std::size_t n = 0; n < order; ++n, vn *= v) sum += detail::to_high(t.b[n]) * vn;
  HighComplex iz = i / z, factor = 1;
  HighFloat scale = 2 / boost::multiprecision::sqrt(HighFloat(level));
  for (int j = 0; j < k; ++j) factor *= scale * iz;
  HighComplex right = factor * sum;

  HighFloat lmag = abs(left);
  if (lmag == 0) throw DomainError("Gaussian probe: left side vanishes");
  HighFloat tail = detail::geometric_tail(t.envelope_a, order, abs(w)) +
                   abs(factor) * detail::geometric_tail(t.envelope_b, order, abs(v));
  tail /= lmag;
  ProbeResult r{p.z, order, static_cast<double>(HighFloat(abs(left - right) / lmag)), static_cast<double>(tail)};
  if (!(r.tail < p.tolerance))
    throw TruncationError("Gaussian probe at z = (" + std::to_string(p.z.real()) + ", " + std::to_string(p.z.imag()) +
                          "): tail bound exceeds tolerance at order " + std::to_string(order) + "; raise the order");
  return r;
}

inline FourierReport fourier_pair_check(const CoefficientTable& t, const std::vector<GaussianProbe>& probes) {
  FourierReport rep;
  for (auto& p : probes) {
    rep.probes.push_back(fourier_probe(t, p));
    rep.max_error = std::max(rep.max_error, rep.probes.back().error);
  }
  return rep;
}

inline FourierReport fourier_pair_check(const EigenDataSet* ds, const BasisVector& x,
                                        const std::vector<GaussianProbe>& probes) {
  std::size_t count = 1;
  for (auto& p : probes) count = std::max(count, p.order);
  return fourier_pair_check(coefficient_table(ds, x, count), probes);
}

// Center density read off a pairing with a_0 = 1 and minimal radius 1:
// b_0 (2/sqrt 48)^3 / 2^6 = b_0 sqrt(3) / 4608.  For a lattice theta series
// this is the Poisson covolume factor, so E6 gives 1/(8 sqrt 3).
inline QuadElem poisson_center_density(const BasisVector& x) {
  return b0_closed_form(x) * QuadElem(3, 0, Rational(1, 4608));
}

}  // namespace lpcert
