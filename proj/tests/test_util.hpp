#pragma once

#include <doctest.h>

#include "matrad/mcquad.hpp"

namespace testutil {

using matrad::Mat;

// small hand-rolled generators for property tests
inline Mat random_pd(int m, matrad::SeededSampler& s, double lo = 0.3, double hi = 2.0) {
  const Mat q = matrad::haar_orthogonal(m, s);
  Eigen::VectorXd ev(m);
  for (int i = 0; i < m; ++i) ev(i) = lo + (hi - lo) * s.uniform();
  return q * ev.asDiagonal() * q.transpose();
}

inline double uniform_in(matrad::SeededSampler& s, double a, double b) { return a + (b - a) * s.uniform(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
