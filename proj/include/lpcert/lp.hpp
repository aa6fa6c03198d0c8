#pragma once

// The 44-equation system for x, its exact solution over Q(sqrt 3), the
// resulting bounds, and a rational simplex for re-deriving the active set.

#include "lpcert/basis.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace lpcert {

struct LinearRelation {
  std::vector<std::pair<int, long>> terms;  // sum c_j x_j = 0
  std::string text() const {
    std::ostringstream o;
    bool first = true;
    for (auto [j, c] : terms) {
      if (!first) o << (c < 0 ? " - " : " + ");
      else if (c < 0) o << "-";
      long a = c < 0 ? -c : c;
      if (a != 1) o << a;
      o << "x" << j;
      first = false;
    }
    o << " = 0";
    return o.str();
  }
};

struct ConstraintSet {
  bool normalization = true;  // a_0 = 1
  std::vector<u64> forced_a_zeros, forced_b_zeros;
  std::vector<LinearRelation> relations;

  std::size_t equation_count() const {
    return relations.size() + (normalization ? 1 : 0) + forced_a_zeros.size() + forced_b_zeros.size();
  }
};

inline ConstraintSet default_constraints() {
  ConstraintSet c;
  c.relations = {
      {{{10, 1}}},
      {{{41, 1}}},
      {{{43, 1}}},
      {{{1, 1}, {11, 1}}},
      {{{6, 1}, {12, 1}}},
      {{{23, 1}, {29, 1}}},
      {{{25, 1}, {31, -1}}},
      {{{13, 1}, {20, 1}, {21, 3}}},
      {{{16, 1}, {20, 1}, {22, 2}}},
      {{{18, 1}, {21, -1}, {22, -2}}},
  };
  c.forced_a_zeros = {2, 3, 4, 6, 8, 10, 11, 12, 22, 26, 29, 32, 38, 60, 64, 88, 90, 92, 106, 164, 1932};
  c.forced_b_zeros = {1, 2, 3, 4, 7, 8, 9, 10, 13, 14, 36, 82};
  return c;
}

// ---------------------------------------------------------------------------
// Constraint rows: a_n and b_n as linear forms in x.

struct RowBuilder {
  const EigenDataSet* ds;

  // coefficient of x_j in a_n
  std::vector<QuadElem> a_row(u64 n) const {
    std::vector<QuadElem> r;
    r.reserve(kBasisSize);
    for (int j = 1; j <= kBasisSize; ++j) r.push_back(basis_coeff(ds, j, n));
    return r;
  }

  // coefficient of x_k in b_n = sum_j [j]_n (W x)_j
  std::vector<QuadElem> b_row(u64 n) const {
    std::vector<QuadElem> a = a_row(n);
    std::vector<QuadElem> r(kBasisSize, QuadElem::rational(0, 3));
    const AtkinLehnerMatrix& w = atkin_lehner();
    auto block = [&](const QuadMatrix& m, int first) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const QuadElem& ai = a[static_cast<std::size_t>(first - 1) + i];
        if (ai.is_zero()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k)
          if (!m(i, k).is_zero()) r[static_cast<std::size_t>(first - 1) + k] += ai * m(i, k);
      }
    };
    block(w.w3e, 1);
    block(w.w3c, 13);
    block(w.w4e, 23);
    block(w.w4c, 35);
    return r;
  }
};

struct Solution {
  BasisVector x, y;
  QuadElem b0{3};
  QuadElem center_density_bound{3};
  RatInterval density_bound;
};

inline QuadElem center_density_from_b0(const QuadElem& b0) {
  // b0 (2/sqrt 48)^3 (sqrt 7 / 2)^6 = b0 * 343 sqrt(3) / 4608
  return b0 * QuadElem(3, 0, Rational(343, 4608));
}

inline RatInterval density_from_center(const QuadElem& center) {
  const Rational prec(1, Integer(1) << 200);
  RatInterval pi = enclose_constant(Pi{}, prec);
  return enclose(center, prec) * pi * pi * pi / RatInterval::point(6);
}

struct ResidualError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Solution solve_exact(const ConstraintSet& c, const EigenDataSet* ds) {
  const std::size_t m = c.equation_count();
  QuadMatrix A(m, kBasisSize, 3);
  std::vector<QuadElem> rhs(m, QuadElem::rational(0, 3));
  RowBuilder rb{ds};
  std::size_t r = 0;
  auto put = [&](const std::vector<QuadElem>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) A(r, k) = row[k];
    ++r;
  };
  for (auto& rel : c.relations) {
    for (auto [j, coef] : rel.terms) A(r, static_cast<std::size_t>(j - 1)) = QuadElem::rational(coef, 3);
    ++r;
  }
  if (c.normalization) {
    rhs[r] = QuadElem::rational(1, 3);
    put(rb.a_row(0));
  }
  for (u64 n : c.forced_a_zeros) put(rb.a_row(n));
  for (u64 n : c.forced_b_zeros) put(rb.b_row(n));
  if (m != kBasisSize) {
    QuadMatrix mm = A;
    auto er = row_reduce(mm);
    throw RankDeficiency(er.rank, "constraint set has " + std::to_string(m) + " equations, need 44 (rank " +
                                      std::to_string(er.rank) + ")");
  }
  std::vector<QuadElem> sol = solve_linear_system(A, rhs);
  Solution s;
  for (int j = 1; j <= kBasisSize; ++j) s.x[j] = sol[static_cast<std::size_t>(j - 1)];
  s.y = transform_vector(s.x);
  s.b0 = coefficient(ds, s.x, 0, Side::b);
  s.center_density_bound = center_density_from_b0(s.b0);
  s.density_bound = density_from_center(s.center_density_bound);
  // post-hoc: every imposed equation holds exactly
  for (auto& rel : c.relations) {
    QuadElem v = QuadElem::rational(0, 3);
    for (auto [j, coef] : rel.terms) v += s.x[j] * Rational(coef);
    if (!v.is_zero()) throw ResidualError("relation fails: " + rel.text());
  }
  if (c.normalization && coefficient(ds, s.x, 0, Side::a) != QuadElem::rational(1, 3))
    throw ResidualError("a_0 != 1");
  for (u64 n : c.forced_a_zeros)
    if (!coefficient(ds, s.x, n, Side::a).is_zero()) throw ResidualError("a_" + std::to_string(n) + " != 0");
  for (u64 n : c.forced_b_zeros)
    if (!coefficient(ds, s.x, n, Side::b).is_zero()) throw ResidualError("b_" + std::to_string(n) + " != 0");
  return s;
}

struct BoundReport {
  QuadElem center{3};
  std::string center_decimal;  // rounded down
  QuadElem b0{3};
  std::string b0_decimal;
  Rational density_lower;
  std::string density_decimal;  // rounded down
};

inline BoundReport bound_report(const Solution& s, unsigned long digits = 38) {
  BoundReport r;
  r.center = s.center_density_bound;
  r.center_decimal = quad_to_decimal(r.center, digits, Rounding::down);
  r.b0 = r.center * QuadElem(3, 0, Rational(1536, 343));  // (768/343) sqrt 12
  r.b0_decimal = quad_to_decimal(r.b0, digits, Rounding::down);
  r.density_lower = s.density_bound.lo;
  r.density_decimal = rational_to_decimal(r.density_lower, 12, Rounding::down);
  return r;
}

// ---------------------------------------------------------------------------
// Exact rational simplex (tableau form, Bland's rule) for
//   min c.z  subject to  A z = b, z >= 0.

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> z;
  std::vector<std::size_t> basis;
  std::vector<Rational> duals;  // y with B^T y = c_B
  Rational objective;
  std::size_t pivots = 0;
};

inline SimplexResult simplex_standard(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                                      const std::vector<Rational>& c) {
  const std::size_t m = A.size(), n = c.size();
  // tableau with m artificial columns after the n structural ones
  const std::size_t W = n + m;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(W + 1));
  for (std::size_t i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = neg ? Rational(-A[i][j]) : A[i][j];
    T[i][n + i] = 1;
    T[i][W] = neg ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  SimplexResult res;

  auto run = [&](const std::vector<Rational>& cost, std::size_t allowed) -> bool {
    for (;;) {
      // reduced costs d_j = cost_j - sum_i cost_{B_i} T_ij
      std::size_t enter = W;
      for (std::size_t j = 0; j < allowed && enter == W; ++j) {
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (T[i][j] != 0 && cost[basis[i]] != 0) d -= cost[basis[i]] * T[i][j];
        if (d < 0) enter = j;
      }
      if (enter == W) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][enter] <= 0) continue;
        Rational ratio = T[i][W] / T[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      Rational piv = T[leave][enter];
      for (auto& v : T[leave])
        if (v != 0) v /= piv;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || T[i][enter] == 0) continue;
        Rational f = T[i][enter];
        for (std::size_t j = 0; j <= W; ++j)
          if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
      }
      basis[leave] = enter;
      ++res.pivots;
    }
  };

  std::vector<Rational> phase1(W, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  run(phase1, W);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) infeas += T[i][W];
  if (infeas > 0) {
    res.status = LpStatus::infeasible;
    return res;
  }
  // drive remaining (zero-level) artificials out of the basis where possible
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (T[i][j] == 0 || std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      Rational piv = T[i][j];
      for (auto& v : T[i])
        if (v != 0) v /= piv;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || T[k][j] == 0) continue;
        Rational f = T[k][j];
        for (std::size_t l = 0; l <= W; ++l)
          if (T[i][l] != 0) T[k][l] -= f * T[i][l];
      }
      basis[i] = j;
      break;
    }
  }
  std::vector<Rational> cost(W, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!run(cost, n)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.basis = basis;
  res.z.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.z[basis[i]] = T[i][W];
  res.objective = 0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.z[j];
  // duals from B^T y = c_B (rows of redundant artificials get y = 0)
  QuadMatrix BT(m, m, 0);
  std::vector<QuadElem> cb(m, QuadElem::rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = basis[i];
    for (std::size_t k = 0; k < m; ++k) {
      // artificial columns are +-e_k in the original row orientation
      Rational a = j < n ? A[k][j] : Rational(k == j - n ? (b[k] < 0 ? -1 : 1) : 0);
      BT(i, k) = QuadElem::rational(a);
    }
    cb[i] = QuadElem::rational(j < n ? c[j] : Rational(0));
  }
  std::vector<QuadElem> y = solve_linear_system(BT, cb);
  for (auto& v : y) res.duals.push_back(v.a());
  return res;
}

// ---------------------------------------------------------------------------
// Discovery: maximize b0 over a truncated constraint set with sqrt 3 replaced
// by a rational proxy, via the dual in standard form.

struct DiscoveryResult {
  LpStatus status = LpStatus::infeasible;
  ConstraintSet tight;  // constraints with zero slack at the optimum
  std::vector<Rational> x;  // proxy optimum
  Rational b0_proxy;
  std::size_t pivots = 0;
};

inline Rational sqrt3_proxy(const Rational& precision) { return enclose_constant(SqrtOf{3}, precision).mid(); }

inline DiscoveryResult discover_active_set(const EigenDataSet* ds, u64 n_max_a, u64 n_max_b,
                                           const Rational& precision = Rational(1, Integer(1) << 128)) {
  const Rational s3 = sqrt3_proxy(precision);
  auto proxy = [&](const QuadElem& q) { return Rational(q.a() + q.b() * s3); };
  RowBuilder rb{ds};
  std::vector<std::vector<Rational>> eq_rows, in_rows;
  std::vector<Rational> eq_rhs;
  std::vector<std::pair<char, u64>> in_label;
  auto to_proxy = [&](const std::vector<QuadElem>& r) {
    std::vector<Rational> out;
    for (auto& q : r) out.push_back(proxy(q));
    return out;
  };
  eq_rows.push_back(to_proxy(rb.a_row(0)));
  eq_rhs.push_back(1);
  for (u64 n = 1; n < 7; ++n) {
    eq_rows.push_back(to_proxy(rb.a_row(n)));
    eq_rhs.push_back(0);
  }
  for (u64 n = 7; n <= n_max_a; ++n) {
    in_rows.push_back(to_proxy(rb.a_row(n)));
    in_label.push_back({'a', n});
  }
  std::vector<QuadElem> b0row = rb.b_row(0);
  for (u64 n = 1; n <= n_max_b; ++n) {
    in_rows.push_back(to_proxy(rb.b_row(n)));
    in_label.push_back({'b', n});
  }
  std::vector<Rational> obj = to_proxy(b0row);
  // dual: min eq_rhs.(u+ - u-) s.t. sum_i eq_i (u+_i - u-_i) - sum_l in_l w_l = obj
  const std::size_t ne = eq_rows.size(), ni = in_rows.size(), nv = 2 * ne + ni;
  std::vector<std::vector<Rational>> A(kBasisSize, std::vector<Rational>(nv));
  std::vector<Rational> cost(nv, 0);
  for (std::size_t i = 0; i < ne; ++i) {
    cost[i] = eq_rhs[i];
    cost[ne + i] = -eq_rhs[i];
    for (std::size_t k = 0; k < kBasisSize; ++k) {
      A[k][i] = eq_rows[i][k];
      A[k][ne + i] = -eq_rows[i][k];
    }
  }
  for (std::size_t l = 0; l < ni; ++l)
    for (std::size_t k = 0; k < kBasisSize; ++k) A[k][2 * ne + l] = -in_rows[l][k];
  SimplexResult sr = simplex_standard(A, obj, cost);
  DiscoveryResult out;
  out.pivots = sr.pivots;
  if (sr.status == LpStatus::infeasible) {
    out.status = LpStatus::unbounded;  // dual infeasible: b0 unbounded on the truncation
    return out;
  }
  if (sr.status == LpStatus::unbounded) {
    out.status = LpStatus::infeasible;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = sr.duals;
  out.b0_proxy = sr.objective;
  out.tight.forced_a_zeros = {1, 2, 3, 4, 5, 6};
  for (std::size_t l = 0; l < ni; ++l) {
    Rational slack = 0;
    for (std::size_t k = 0; k < kBasisSize; ++k) slack += in_rows[l][k] * out.x[k];
    if (slack == 0) (in_label[l].first == 'a' ? out.tight.forced_a_zeros : out.tight.forced_b_zeros).push_back(in_label[l].second);
  }
  return out;
}

}  // namespace lpcert
