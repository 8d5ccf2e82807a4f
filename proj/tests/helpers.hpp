#pragma once

#include <random>

#include "doctest.h"
#include "phasecoh/tensor.hpp"

namespace testing {

inline double dist(const phasecoh::MatC& a, const phasecoh::MatC& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return phasecoh::max_abs(a - b);
}

inline phasecoh::MatC plus_proj() {
  phasecoh::MatC p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  return p;
}

inline phasecoh::MatC random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  phasecoh::MatC m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

}  // namespace testing
