#pragma once

// The 44 basis functions of M_3(Gamma_0(48), chi_3) + M_3(Gamma_0(48), chi_4).

#include "lpcert/exact.hpp"

#include <array>

namespace lpcert {

inline constexpr int kBasisSize = 44;

enum class Side { a, b };
enum class BasisKind { eisenstein, cuspidal };

struct BasisIndex {
  int index;      // 1..44
  int character;  // 3 or 4
  BasisKind kind;
  int base;       // unscaled parent
  int scale;      // f_index(z) = f_base(scale z)
  bool twist;     // multiplied by chi_4(n)
};

namespace detail {

constexpr std::array<BasisIndex, kBasisSize> make_registry() {
  using K = BasisKind;
  return {{
      {1, 3, K::eisenstein, 1, 1, false},   {2, 3, K::eisenstein, 1, 2, false},
      {3, 3, K::eisenstein, 1, 4, false},   {4, 3, K::eisenstein, 1, 8, false},
      {5, 3, K::eisenstein, 1, 16, false},  {6, 3, K::eisenstein, 6, 1, false},
      {7, 3, K::eisenstein, 6, 2, false},   {8, 3, K::eisenstein, 6, 4, false},
      {9, 3, K::eisenstein, 6, 8, false},   {10, 3, K::eisenstein, 6, 16, false},
      {11, 3, K::eisenstein, 1, 1, true},   {12, 3, K::eisenstein, 6, 1, true},
      {13, 3, K::cuspidal, 13, 1, false},   {14, 3, K::cuspidal, 13, 2, false},
      {15, 3, K::cuspidal, 13, 4, false},   {16, 3, K::cuspidal, 16, 1, false},
      {17, 3, K::cuspidal, 16, 2, false},   {18, 3, K::cuspidal, 18, 1, false},
      {19, 3, K::cuspidal, 18, 2, false},   {20, 3, K::cuspidal, 20, 1, false},
      {21, 3, K::cuspidal, 21, 1, false},   {22, 3, K::cuspidal, 22, 1, false},
      {23, 4, K::eisenstein, 23, 1, false}, {24, 4, K::eisenstein, 23, 2, false},
      {25, 4, K::eisenstein, 23, 3, false}, {26, 4, K::eisenstein, 23, 4, false},
      {27, 4, K::eisenstein, 23, 6, false}, {28, 4, K::eisenstein, 23, 12, false},
      {29, 4, K::eisenstein, 29, 1, false}, {30, 4, K::eisenstein, 29, 2, false},
      {31, 4, K::eisenstein, 29, 3, false}, {32, 4, K::eisenstein, 29, 4, false},
      {33, 4, K::eisenstein, 29, 6, false}, {34, 4, K::eisenstein, 29, 12, false},
      {35, 4, K::cuspidal, 35, 1, false},   {36, 4, K::cuspidal, 35, 2, false},
      {37, 4, K::cuspidal, 35, 4, false},   {38, 4, K::cuspidal, 38, 1, false},
      {39, 4, K::cuspidal, 38, 2, false},   {40, 4, K::cuspidal, 38, 4, false},
      {41, 4, K::cuspidal, 41, 1, false},   {42, 4, K::cuspidal, 41, 3, false},
      {43, 4, K::cuspidal, 43, 1, false},   {44, 4, K::cuspidal, 44, 1, false},
  }};
}

}  // namespace detail

inline constexpr std::array<BasisIndex, kBasisSize> kRegistry = detail::make_registry();

inline const BasisIndex& basis_index(int i) {
  if (i < 1 || i > kBasisSize) throw DomainError("basis index out of range: " + std::to_string(i));
  return kRegistry[static_cast<std::size_t>(i - 1)];
}

inline bool is_eisenstein(int i) { return basis_index(i).kind == BasisKind::eisenstein; }

// Coefficient vector over Q(sqrt 3), indexed 1..44.
class BasisVector {
 public:
  BasisVector() { v_.fill(QuadElem::rational(0, 3)); }
  QuadElem& operator[](int i) { return v_.at(static_cast<std::size_t>(i - 1)); }
  const QuadElem& operator[](int i) const { return v_.at(static_cast<std::size_t>(i - 1)); }
  static BasisVector unit(int i) {
    BasisVector v;
    v[i] = QuadElem::rational(1, 3);
    return v;
  }
  friend bool operator==(const BasisVector& l, const BasisVector& r) {
    for (int i = 1; i <= kBasisSize; ++i)
      if (l[i] != r[i]) return false;
    return true;
  }
  // Same vector with the given entries zeroed (e.g. to isolate one subspace).
  BasisVector restricted(BasisKind kind) const {
    BasisVector out;
    for (int i = 1; i <= kBasisSize; ++i)
      if (basis_index(i).kind == kind) out[i] = (*this)[i];
    return out;
  }

 private:
  std::array<QuadElem, kBasisSize> v_;
};

}  // namespace lpcert
