#pragma once

#include <Eigen/Dense>

#include "kickspec/operators.hpp"

namespace kickspec::linalg {

/// Smallest b such that a_ij == 0 whenever |i - j| > b.
Index bandwidth(const ComplexMatrix& a);

/// Dense product that skips structurally zero work when both factors are
/// narrowly banded. Result is bitwise independent of which path is taken
/// only up to summation order.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // column k belongs to values[k]
};

/// Ascending eigenvalues. Uses the banded LAPACK driver when the matrix
/// bandwidth is small relative to its dimension.
Eigen::VectorXd eigenvalues(const HermitianOperator& h);

/// Full eigendecomposition (LAPACK zheevd).
EigenSystem eigensystem(const HermitianOperator& h);

/// Eigenvalues of a general square complex matrix (LAPACK zgeev).
Eigen::VectorXcd general_eigenvalues(const ComplexMatrix& a);

}  // namespace kickspec::linalg
