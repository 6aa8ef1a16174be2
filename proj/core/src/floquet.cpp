#include "kickspec/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kickspec/errors.hpp"
#include "kickspec/linalg.hpp"
#include "kickspec/su2.hpp"

namespace kickspec::floquet {

double fold_phase(double x) {
  constexpr double two_pi = 2.0 * kPi;
  double y = x - two_pi * std::ceil((x - kPi) / two_pi);
  // Guard the open end against rounding in the subtraction.
  if (y <= -kPi) y += two_pi;
  if (y > kPi) y -= two_pi;
  return y;
}

UnitaryOperator unitary_from_hermitian(const HermitianOperator& h, double s) {
  const linalg::EigenSystem es = linalg::eigensystem(h);
  Eigen::VectorXcd phases(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k) phases[k] = std::polar(1.0, -s * es.values[k]);
  ComplexMatrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  return UnitaryOperator(std::move(u));
}

KickedSystem dkt_system(double alpha, double eta, SpinLabel j, double period) {
  HermitianOperator h0 = su2::dkt_static_part(alpha, eta, j, period);
  HermitianOperator v = alpha * su2::jx(j);
  return KickedSystem(std::move(h0), std::move(v), period);
}

UnitaryOperator kicked_floquet(const KickedSystem& sys) {
  return unitary_from_hermitian(sys.h0(), sys.period()) * unitary_from_hermitian(sys.kick(), 1.0);
}

UnitaryOperator dkt_floquet(double alpha, double eta, SpinLabel j) {
  // Generator of the first factor is alpha (J+ e^{iX} + h.c.), i.e. the
  // static part at T = 1.
  const HermitianOperator rotated = su2::dkt_static_part(alpha, eta, j, 1.0);
  const HermitianOperator kick = alpha * su2::jx(j);
  return unitary_from_hermitian(rotated, 1.0) * unitary_from_hermitian(kick, 1.0);
}

QuasienergySpectrum quasienergy_spectrum(const UnitaryOperator& u) {
  const Eigen::VectorXcd lambda = linalg::general_eigenvalues(u.matrix());
  QuasienergySpectrum out;
  out.phases.reserve(static_cast<std::size_t>(lambda.size()));
  for (Index k = 0; k < lambda.size(); ++k) {
    const double modulus = std::abs(lambda[k]);
    if (std::abs(modulus - 1.0) > 1e-8) {
      std::ostringstream msg;
      msg << "Floquet eigenvalue modulus " << modulus << " is not unit";
      throw NumericalError(msg.str());
    }
    out.phases.push_back(fold_phase(-std::arg(lambda[k])));
  }
  std::sort(out.phases.begin(), out.phases.end());
  return out;
}

double max_phase_mismatch(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("phase lists differ in length");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, std::abs(fold_phase(a[k] - b[k])));
  return worst;
}

double effective_vs_floquet_error(double alpha, double eta, SpinLabel j) {
  const KickedSystem sys = dkt_system(alpha, eta, j, 1.0);
  const Eigen::VectorXd energies = linalg::eigenvalues(heff_delta_kicked(sys));
  std::vector<double> folded(static_cast<std::size_t>(energies.size()));
  for (Index k = 0; k < energies.size(); ++k)
    folded[static_cast<std::size_t>(k)] = fold_phase(energies[k] * sys.period());
  const QuasienergySpectrum exact = quasienergy_spectrum(dkt_floquet(alpha, eta, j));
  return max_phase_mismatch(std::move(folded), exact.phases);
}

}  // namespace kickspec::floquet
