#pragma once

// Assembly of a_n and b_n, the Atkin-Lehner involution on the 44-basis, and
// the theta series of E6, E6*, D6 and Z6 as basis vectors.

#include "lpcert/cuspidal.hpp"
#include "lpcert/eisenstein.hpp"

#include <string>

namespace lpcert {

// ---------------------------------------------------------------------------
// Atkin-Lehner blocks.  Column j holds the transform of the j-th basis
// function of the block, so y = W x.

struct AtkinLehnerMatrix {
  QuadMatrix w3e{12, 12, 3}, w3c{10, 10, 3}, w4e{12, 12, 3}, w4c{10, 10, 3};
};

namespace detail {

struct SparseEntry {
  int row, col;
  long num, den;
};

inline QuadMatrix build_block(int size, const std::vector<SparseEntry>& entries, const QuadElem& factor) {
  QuadMatrix m(static_cast<std::size_t>(size), static_cast<std::size_t>(size), 3);
  for (auto& e : entries)
    m(static_cast<std::size_t>(e.row - 1), static_cast<std::size_t>(e.col - 1)) =
        factor * make_rational(e.num, e.den);
  return m;
}

}  // namespace detail

inline const AtkinLehnerMatrix& atkin_lehner() {
  static const AtkinLehnerMatrix w = [] {
    AtkinLehnerMatrix m;
    const QuadElem quarter = QuadElem::rational(Rational(1, 4), 3);
    const QuadElem inv_sqrt12(3, 0, Rational(1, 6));  // 1/sqrt(12) = sqrt(3)/6
    m.w3e = detail::build_block(12,
                                {{1, 10, -3, 16},
                                 {2, 9, -3, 2},
                                 {3, 8, -12, 1},
                                 {4, 7, -96, 1},
                                 {5, 6, -768, 1},
                                 {6, 5, -1, 48},
                                 {7, 4, -1, 6},
                                 {8, 3, -4, 3},
                                 {9, 2, -32, 3},
                                 {10, 1, -256, 3},
                                 {11, 12, -12, 1},
                                 {12, 11, -4, 3}},
                                quarter);
    m.w3c = detail::build_block(10,
                                {{1, 3, 1, 2},
                                 {2, 2, 4, 1},
                                 {3, 1, 32, 1},
                                 {4, 5, 3, 2},
                                 {4, 7, 3, 2},
                                 {5, 4, 12, 1},
                                 {5, 6, 12, 1},
                                 {6, 5, -1, 6},
                                 {6, 7, -3, 2},
                                 {7, 4, -4, 3},
                                 {7, 6, -12, 1},
                                 {8, 8, 2, 1},
                                 {8, 9, -6, 1},
                                 {8, 10, -16, 1},
                                 {9, 8, 2, 3},
                                 {9, 9, 6, 1},
                                 {9, 10, 16, 3},
                                 {10, 8, -1, 1},
                                 {10, 9, -3, 1},
                                 {10, 10, -4, 1}},
                                quarter);
    const long anti[12][2] = {{-1, 3},  {-8, 3}, {-9, 1},  {-64, 3}, {-72, 1}, {-576, 1},
                              {-1, 48}, {-1, 6}, {-9, 16}, {-4, 3},  {-9, 2}, {-36, 1}};
    std::vector<detail::SparseEntry> w4e;
    for (int i = 1; i <= 12; ++i) w4e.push_back({i, 13 - i, anti[i - 1][0], anti[i - 1][1]});
    m.w4e = detail::build_block(12, w4e, inv_sqrt12);
    m.w4c = detail::build_block(10,
                                {{1, 3, 1, 4},
                                 {1, 6, -1, 1},
                                 {2, 2, 2, 1},
                                 {2, 5, -8, 1},
                                 {3, 1, 16, 1},
                                 {3, 4, -64, 1},
                                 {4, 3, -1, 8},
                                 {4, 6, -1, 4},
                                 {5, 2, -1, 1},
                                 {5, 5, -2, 1},
                                 {6, 1, -8, 1},
                                 {6, 4, -16, 1},
                                 {7, 8, 2, 3},
                                 {8, 7, 18, 1},
                                 {9, 9, 3, 1},
                                 {9, 10, -3, 1},
                                 {10, 9, -1, 1},
                                 {10, 10, -3, 1}},
                                inv_sqrt12);
    return m;
  }();
  return w;
}

inline BasisVector transform_vector(const BasisVector& x) {
  const AtkinLehnerMatrix& w = atkin_lehner();
  BasisVector y;
  auto apply = [&](const QuadMatrix& m, int first) {
    std::vector<QuadElem> in;
    for (std::size_t i = 0; i < m.cols(); ++i) in.push_back(x[first + static_cast<int>(i)]);
    std::vector<QuadElem> out = m.apply(in);
    for (std::size_t i = 0; i < m.rows(); ++i) y[first + static_cast<int>(i)] = out[i];
  };
  apply(w.w3e, 1);
  apply(w.w3c, 13);
  apply(w.w4e, 23);
  apply(w.w4c, 35);
  return y;
}

inline const BasisVector& side_vector(const BasisVector& x, Side side, BasisVector& storage) {
  if (side == Side::a) return x;
  storage = transform_vector(x);
  return storage;
}

// ---------------------------------------------------------------------------
// Coefficients.

inline QuadElem basis_coeff(const EigenDataSet* ds, int index, u64 n) {
  const BasisIndex& bi = basis_index(index);
  if (bi.kind == BasisKind::eisenstein) return QuadElem::rational(eis_basis_coeff(index, n), 3);
  if (n == 0) return QuadElem::rational(0, 3);
  if (!ds) throw ConfigError("cuspidal coefficients need eigen data");
  return QuadElem::rational(Rational(cusp_basis_coeff(*ds, index, n)), 3);
}

// Exact a_n (side a) or b_n (side b, computed from y = W x).
inline QuadElem coefficient(const EigenDataSet* ds, const BasisVector& x, u64 n, Side side) {
  BasisVector storage;
  const BasisVector& v = side_vector(x, side, storage);
  if (n == 0) return eis_part(v, u64(0));
  Factorization f = factorize(n);
  QuadElem s = eis_part(v, f);
  bool any_cusp = false;
  for (int j = 1; j <= kBasisSize; ++j)
    if (!is_eisenstein(j) && !v[j].is_zero()) any_cusp = true;
  if (any_cusp) {
    if (!ds) throw ConfigError("cuspidal coefficients need eigen data");
    CuspEvaluator ev(*ds);
    s += cusp_part(ev, v, f);
  }
  return s;
}

// b0 in closed form from the Eisenstein entries of x.
inline QuadElem b0_closed_form(const BasisVector& x) {
  QuadElem s = x[1] * Rational(64, 27) + x[2] * Rational(8, 27) + x[3] * Rational(1, 27) +
               x[4] * Rational(1, 216) + x[5] * Rational(1, 1728);
  QuadElem t = x[23] * Rational(9) + x[24] * Rational(9, 8) + x[25] * Rational(1, 3) + x[26] * Rational(9, 64) +
               x[27] * Rational(1, 24) + x[28] * Rational(1, 192);
  return s + t * QuadElem(3, 0, Rational(1, 6));
}

// ---------------------------------------------------------------------------
// Theta series of named lattices (E6* suitably scaled).

enum class Lattice { E6, E6Dual, D6, Z6 };

inline Lattice parse_lattice(const std::string& s) {
  if (s == "E6") return Lattice::E6;
  if (s == "E6*") return Lattice::E6Dual;
  if (s == "D6") return Lattice::D6;
  if (s == "Z6") return Lattice::Z6;
  throw DomainError("unknown lattice " + s);
}

inline BasisVector lattice_combination(Lattice l) {
  BasisVector v;
  auto set = [&](int i, long c) { v[i] = QuadElem::rational(c, 3); };
  switch (l) {
    case Lattice::E6: set(1, 81), set(6, -9); break;
    case Lattice::E6Dual: set(1, 9), set(6, -9); break;
    case Lattice::D6: set(23, 64), set(29, -4); break;
    case Lattice::Z6: set(23, 16), set(29, -4); break;
  }
  return v;
}

}  // namespace lpcert
