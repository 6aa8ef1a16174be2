#include "kickspec/operators.hpp"

#include <cmath>
#include <sstream>

#include "kickspec/errors.hpp"
#include "kickspec/linalg.hpp"

namespace kickspec {

SpinLabel::SpinLabel(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || j < 0.0 || std::abs(twice - rounded) > 1e-12 ||
      rounded > 1e8) {
    std::ostringstream msg;
    msg << "spin label j must be a non-negative half-integer, got " << j;
    throw DomainError(msg.str());
  }
  twice_j_ = static_cast<int>(rounded);
}

SpinLabel SpinLabel::from_twice(int twice_j) {
  if (twice_j < 0) throw DomainError("spin label 2j must be non-negative");
  return SpinLabel(Twice{}, twice_j);
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix is not square");
  double worst = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = j; i < a.rows(); ++i)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("matrix is not square");
  ComplexMatrix gram = u.adjoint() * u;
  gram.diagonal().array() -= 1.0;
  return max_abs(gram);
}

HermitianOperator::HermitianOperator(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)) {
  const double defect = hermiticity_defect(entries_);
  const double scale = max_abs(entries_);
  if (defect > tol * scale) {
    std::ostringstream msg;
    msg << "matrix violates Hermiticity: defect " << defect << " at scale " << scale;
    throw NumericalError(msg.str());
  }
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(Unchecked{}, ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(Unchecked{}, ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const Eigen::VectorXd& diag) {
  ComplexMatrix m = ComplexMatrix::Zero(diag.size(), diag.size());
  m.diagonal() = diag.cast<Complex>();
  return HermitianOperator(Unchecked{}, std::move(m));
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (other.dim() != dim()) throw DimensionMismatch("operator dimensions differ");
  entries_ += other.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  if (other.dim() != dim()) throw DimensionMismatch("operator dimensions differ");
  entries_ -= other.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  entries_ *= s;
  return *this;
}

UnitaryOperator::UnitaryOperator(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)) {
  const double defect = unitarity_defect(entries_);
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "matrix violates unitarity: ||U^dagger U - 1||_max = " << defect;
    throw NumericalError(msg.str());
  }
}

UnitaryOperator UnitaryOperator::identity(Index dim) {
  return UnitaryOperator(ComplexMatrix::Identity(dim, dim));
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(entries_.adjoint());
}

UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return UnitaryOperator(linalg::multiply(a.entries_, b.entries_));
}

}  // namespace kickspec
