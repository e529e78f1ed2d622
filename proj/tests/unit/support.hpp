#pragma once

#include <cmath>
#include <random>

#include "wgcasimir/types.hpp"

namespace wgcasimir::testing {

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(normal(rng), normal(rng));
  return m;
}

inline double rel_err(double value, double reference) { return std::abs(value / reference - 1.0); }

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace wgcasimir::testing
