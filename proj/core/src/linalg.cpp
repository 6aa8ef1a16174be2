#include "kickspec/linalg.hpp"

#include <complex>
#include <sstream>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "kickspec/errors.hpp"

namespace kickspec::linalg {
namespace {

// Banded paths only pay off when the band is a small fraction of the matrix.
bool narrow(Index band, Index n) { return n >= 64 && 8 * (2 * band + 1) <= n; }

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    std::ostringstream msg;
    msg << routine << " failed with info = " << info;
    throw NumericalError(msg.str());
  }
}

}  // namespace

Index bandwidth(const ComplexMatrix& a) {
  Index band = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) band = std::max(band, std::abs(i - j));
    }
  }
  return band;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product dimensions differ");
  const Index n = a.rows();
  if (n != a.cols() || n != b.cols()) return a * b;
  const Index ba = bandwidth(a);
  const Index bb = bandwidth(b);
  if (!narrow(ba, n) || !narrow(bb, n)) return a * b;

  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index j_lo = std::max<Index>(0, k - bb);
    const Index j_hi = std::min<Index>(n - 1, k + bb);
    for (Index j = j_lo; j <= j_hi; ++j) {
      const Complex bjk = b(j, k);
      if (bjk == Complex(0.0, 0.0)) continue;
      const Index i_lo = std::max<Index>(0, j - ba);
      const Index i_hi = std::min<Index>(n - 1, j + ba);
      for (Index i = i_lo; i <= i_hi; ++i) c(i, k) += a(i, j) * bjk;
    }
  }
  return c;
}

Eigen::VectorXd eigenvalues(const HermitianOperator& h) {
  const Index n = h.dim();
  Eigen::VectorXd w(n);
  if (n == 0) return w;
  const ComplexMatrix& a = h.matrix();
  const Index kd = bandwidth(a);
  if (narrow(kd, n)) {
    // Lower band storage: ab(d, j) = a(j + d, j).
    ComplexMatrix ab = ComplexMatrix::Zero(kd + 1, n);
    for (Index j = 0; j < n; ++j)
      for (Index d = 0; d <= kd && j + d < n; ++d) ab(d, j) = a(j + d, j);
    const lapack_int info = LAPACKE_zhbevd(
        LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
        static_cast<lapack_int>(kd), ab.data(), static_cast<lapack_int>(kd + 1), w.data(),
        nullptr, static_cast<lapack_int>(n));
    check_info(info, "zhbevd");
    return w;
  }
  ComplexMatrix work = a;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n), work.data(),
                     static_cast<lapack_int>(n), w.data());
  check_info(info, "zheevd");
  return w;
}

EigenSystem eigensystem(const HermitianOperator& h) {
  const Index n = h.dim();
  EigenSystem out{Eigen::VectorXd(n), h.matrix()};
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                     out.vectors.data(), static_cast<lapack_int>(n), out.values.data());
  check_info(info, "zheevd");
  return out;
}

Eigen::VectorXcd general_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix is not square");
  const Index n = a.rows();
  Eigen::VectorXcd w(n);
  if (n == 0) return w;
  ComplexMatrix work = a;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), w.data(), nullptr, 1, nullptr, 1);
  check_info(info, "zgeev");
  return w;
}

}  // namespace kickspec::linalg
