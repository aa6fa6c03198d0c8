#pragma once

// Shared, lazily built fixtures: the bundled eigen data and the solved x.

#include "lpcert/lpcert.hpp"

#include <random>

namespace lpcert::testing {

inline const EigenDataSet& eigen_data() {
  static const EigenDataSet ds = load_eigen_data_file(LPCERT_DEFAULT_EIGEN_DATA);
  return ds;
}

inline const Solution& solved() {
  static const Solution s = solve_exact(default_constraints(), &eigen_data());
  return s;
}

inline QuadElem random_quad(std::mt19937_64& rng, long d = 3, long range = 1000) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  return QuadElem(d, make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
}

}  // namespace lpcert::testing
