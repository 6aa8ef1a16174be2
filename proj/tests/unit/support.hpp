#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kickspec/operators.hpp"
#include "oracles.hpp"

namespace support {

inline kickspec::ComplexMatrix to_eigen(const oracle::Mat& m) {
  const auto n = static_cast<kickspec::Index>(m.size());
  kickspec::ComplexMatrix out(n, n);
  for (kickspec::Index i = 0; i < n; ++i)
    for (kickspec::Index j = 0; j < n; ++j) out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

inline oracle::Mat to_oracle(const kickspec::ComplexMatrix& m) {
  oracle::Mat out = oracle::zeros(static_cast<std::size_t>(m.rows()));
  for (kickspec::Index i = 0; i < m.rows(); ++i)
    for (kickspec::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

inline double max_diff(const kickspec::ComplexMatrix& a, const kickspec::ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace support
