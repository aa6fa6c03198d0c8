#include "support.hpp"

#include <gtest/gtest.h>

using namespace lpcert;
using lpcert::testing::random_quad;
using lpcert::testing::solved;

TEST(AtkinLehner, IsAnInvolution) {
  for (int j = 1; j <= kBasisSize; ++j) EXPECT_EQ(transform_vector(transform_vector(BasisVector::unit(j))), BasisVector::unit(j)) << j;
  std::mt19937_64 rng(5);
  BasisVector v;
  for (int j = 1; j <= kBasisSize; ++j) v[j] = random_quad(rng, 3, 100);
  EXPECT_EQ(transform_vector(transform_vector(v)), v);
}

TEST(AtkinLehner, BlocksStayInTheirCharacterAndKind) {
  // the transform of an Eisenstein (cuspidal) function for chi3 (chi4) stays in that block
  for (int j = 1; j <= kBasisSize; ++j) {
    BasisVector w = transform_vector(BasisVector::unit(j));
    int lo = j <= 12 ? 1 : j <= 22 ? 13 : j <= 34 ? 23 : 35;
    int hi = j <= 12 ? 12 : j <= 22 ? 22 : j <= 34 ? 34 : 44;
    for (int k = 1; k <= kBasisSize; ++k)
      if (k < lo || k > hi) { EXPECT_TRUE(w[k].is_zero()) << j << " -> " << k; }
  }
}

TEST(B0, ClosedFormMatchesTransformedConstantTerm) {
  EXPECT_EQ(coefficient(nullptr, solved().x, 0, Side::b), b0_closed_form(solved().x));
  EXPECT_EQ(solved().b0, b0_closed_form(solved().x));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    BasisVector v;
    for (int j = 1; j <= kBasisSize; ++j)
      if (is_eisenstein(j)) v[j] = random_quad(rng, 3, 200);
    EXPECT_EQ(coefficient(nullptr, v, 0, Side::b), b0_closed_form(v));
  }
}

TEST(B0, SolvedValueExceedsPublishedFloor) {
  EXPECT_GE(quad_sign(solved().b0 - QuadElem::rational(make_rational(6168035, 10000000), 3)), 1);
  EXPECT_EQ(quad_to_decimal(solved().b0, 7, Rounding::down, DigitMode::fractional).substr(0, 9), "0.6168035");
}

TEST(Lattices, E6ThetaFromBasis) {
  // vectors of norm 2m counted by a_m
  const long counts[] = {1, 72, 270, 720, 936, 2160};
  BasisVector e6 = lattice_combination(Lattice::E6);
  for (u64 m = 0; m < 6; ++m) EXPECT_EQ(coefficient(nullptr, e6, m, Side::a), QuadElem::rational(counts[m], 3)) << m;
  EXPECT_EQ(b0_closed_form(e6), QuadElem::rational(192, 3));
}

TEST(Lattices, Z6AndD6FromBasis) {
  // Z6 counted at norm m, D6 at norm 2m
  const long z6[] = {1, 12, 60, 160, 252, 312};
  const long d6[] = {1, 60, 252, 544, 1020, 1560};
  BasisVector z = lattice_combination(Lattice::Z6), d = lattice_combination(Lattice::D6);
  for (u64 m = 0; m < 6; ++m) {
    EXPECT_EQ(coefficient(nullptr, z, m, Side::a), QuadElem::rational(z6[m], 3)) << m;
    EXPECT_EQ(coefficient(nullptr, d, m, Side::a), QuadElem::rational(d6[m], 3)) << m;
  }
}

TEST(Lattices, ParseNames) {
  EXPECT_EQ(parse_lattice("E6*"), Lattice::E6Dual);
  EXPECT_EQ(parse_lattice("Z6"), Lattice::Z6);
  EXPECT_THROW(parse_lattice("E7"), DomainError);
}

TEST(Coefficients, CuspidalNeedsData) {
  EXPECT_THROW(basis_coeff(nullptr, 13, 1), ConfigError);
  EXPECT_EQ(basis_coeff(nullptr, 13, 0), QuadElem::rational(0, 3));
  EXPECT_THROW(coefficient(nullptr, solved().x, 5, Side::a), ConfigError);
}

TEST(Coefficients, SideBUsesTransformedVector) {
  const auto& ds = lpcert::testing::eigen_data();
  BasisVector y = transform_vector(solved().x);
  for (u64 n : {1ULL, 5ULL, 82ULL, 1000ULL}) EXPECT_EQ(coefficient(&ds, solved().x, n, Side::b), coefficient(&ds, y, n, Side::a)) << n;
}
