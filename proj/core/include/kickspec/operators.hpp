#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace kickspec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
// (sqrt(5) - 1) / 2
inline constexpr double kGoldenRatio = 0.61803398874989484820;

/// Spin quantum number j, stored as the integer 2j so half-integers are exact.
class SpinLabel {
 public:
  /// Throws DomainError unless 2j is a non-negative integer.
  explicit SpinLabel(double j);
  static SpinLabel from_twice(int twice_j);

  double j() const { return 0.5 * twice_j_; }
  int twice_j() const { return twice_j_; }
  bool is_integer() const { return twice_j_ % 2 == 0; }
  /// Hilbert-space dimension 2j + 1.
  Index dim() const { return twice_j_ + 1; }
  /// Magnetic quantum number of basis index k; basis is ascending m = -j..+j.
  double m(Index k) const { return static_cast<double>(k) - j(); }

 private:
  struct Twice {};
  SpinLabel(Twice, int twice_j) : twice_j_(twice_j) {}
  int twice_j_ = 0;
};

double max_abs(const ComplexMatrix& a);

/// Largest |a_ij - conj(a_ji)|.
double hermiticity_defect(const ComplexMatrix& a);

/// Largest entry of |U^dagger U - 1|.
double unitarity_defect(const ComplexMatrix& u);

/// Dense Hermitian matrix. Construction checks
/// max |a_ij - conj(a_ji)| <= tol * max |a_ij| and throws NumericalError on
/// violation.
class HermitianOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  explicit HermitianOperator(ComplexMatrix entries, double tol = kDefaultTolerance);

  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim);
  static HermitianOperator diagonal(const Eigen::VectorXd& diag);

  Index dim() const { return entries_.rows(); }
  const ComplexMatrix& matrix() const& { return entries_; }
  ComplexMatrix&& matrix() && { return std::move(entries_); }

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

 private:
  struct Unchecked {};
  HermitianOperator(Unchecked, ComplexMatrix entries) : entries_(std::move(entries)) {}
  ComplexMatrix entries_;
};

/// Dense unitary matrix; construction checks ||U^dagger U - 1||_max <= tol.
class UnitaryOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  explicit UnitaryOperator(ComplexMatrix entries, double tol = kDefaultTolerance);
  static UnitaryOperator identity(Index dim);

  Index dim() const { return entries_.rows(); }
  const ComplexMatrix& matrix() const& { return entries_; }

  UnitaryOperator adjoint() const;
  friend UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b);

 private:
  ComplexMatrix entries_;
};

}  // namespace kickspec
