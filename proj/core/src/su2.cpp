#include "kickspec/su2.hpp"

#include <cmath>
#include <sstream>

#include "kickspec/errors.hpp"
#include "kickspec/linalg.hpp"

namespace kickspec::su2 {
namespace {

// <m+1| J+ |m> / 2 for the conventional raising operator J+.
double half_ladder(double j, double m) { return 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0)); }

void require_positive_spin(SpinLabel j) {
  if (j.twice_j() == 0) throw DomainError("operator requires j > 0 (divides by 2j)");
}

}  // namespace

ComplexMatrix jplus_half(SpinLabel j) {
  const Index d = j.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k + 1 < d; ++k) m(k + 1, k) = half_ladder(j.j(), j.m(k));
  return m;
}

HermitianOperator jx(SpinLabel j) {
  ComplexMatrix p = jplus_half(j);
  return HermitianOperator(p + p.adjoint());
}

HermitianOperator jz(SpinLabel j) {
  Eigen::VectorXd diag(j.dim());
  for (Index k = 0; k < j.dim(); ++k) diag[k] = j.m(k);
  return HermitianOperator::diagonal(diag);
}

SpinOperators spin_operators(SpinLabel j) {
  ComplexMatrix p = jplus_half(j);
  const Complex i(0.0, 1.0);
  // jplus = (Jx + i Jy) / 2 and Jx, Jy Hermitian give Jx = p + p^dagger, Jy = -i (p - p^dagger).
  HermitianOperator x(p + p.adjoint());
  HermitianOperator y(-i * (p - p.adjoint()));
  return SpinOperators{std::move(x), std::move(y), jz(j), std::move(p)};
}

HermitianOperator hopping_operator(SpinLabel j) {
  const Index d = j.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k + 1 < d; ++k) {
    m(k, k + 1) = 1.0;
    m(k + 1, k) = 1.0;
  }
  return HermitianOperator(std::move(m));
}

Eigen::VectorXd phase_diagonal(SpinLabel j, double eta) {
  require_positive_spin(j);
  Eigen::VectorXd diag(j.dim());
  for (Index k = 0; k < j.dim(); ++k) diag[k] = eta * (2.0 * j.m(k) + 1.0) / (2.0 * j.j());
  return diag;
}

HermitianOperator phase_operator(SpinLabel j, double eta) {
  return HermitianOperator::diagonal(phase_diagonal(j, eta));
}

Su2FamilyParams table_case(char label, SpinLabel j, double alpha, double eta,
                           std::optional<double> epsilon) {
  Su2FamilyParams p;
  p.alpha = alpha;
  p.eta = eta;
  p.j = j;
  switch (label) {
    case 'a': p.a = alpha; p.b = 0.0; p.c_kind = CouplingKind::JPlusHalf; break;
    case 'b': p.a = alpha; p.b = 0.0; p.c_kind = CouplingKind::Jx; break;
    case 'c': p.a = alpha; p.b = 0.0; p.c_kind = CouplingKind::HalfIdentity; break;
    case 'd': p.a = 0.0; p.b = alpha; p.c_kind = CouplingKind::Jx; break;
    case 'e':
      if (!epsilon) throw ConfigError("SU(2) family case 'e' requires epsilon (b = epsilon * alpha)");
      p.a = alpha; p.b = *epsilon * alpha; p.c_kind = CouplingKind::IdentityAlpha;
      break;
    case 'f': p.a = 0.0; p.b = alpha; p.c_kind = CouplingKind::IdentityAlpha; break;
    default: {
      std::ostringstream msg;
      msg << "unknown SU(2) family case '" << label << "' (expected a-f)";
      throw ConfigError(msg.str());
    }
  }
  return p;
}

HermitianOperator general_su2_hamiltonian(const Su2FamilyParams& p) {
  if (!std::isfinite(p.alpha) || p.alpha == 0.0)
    throw DomainError("SU(2) family requires finite nonzero alpha");
  if (!std::isfinite(p.eta)) throw DomainError("SU(2) family requires finite eta");

  const Index d = p.j.dim();
  const Eigen::VectorXd cos_x = phase_diagonal(p.j, p.eta).array().cos();

  // C cos(X): scale column k of C by cos(X_k).
  ComplexMatrix c_cos;
  switch (p.c_kind) {
    case CouplingKind::JPlusHalf: c_cos = p.alpha * jplus_half(p.j); break;
    case CouplingKind::Jx: c_cos = p.alpha * jx(p.j).matrix(); break;
    case CouplingKind::HalfIdentity: c_cos = 0.5 * ComplexMatrix::Identity(d, d); break;
    case CouplingKind::IdentityAlpha: c_cos = p.alpha * ComplexMatrix::Identity(d, d); break;
    default: throw ConfigError("unknown coupling kind for the SU(2) family");
  }
  c_cos = c_cos * cos_x.cast<Complex>().asDiagonal();

  ComplexMatrix h = c_cos + c_cos.adjoint();
  if (p.a != 0.0) h += p.a * jx(p.j).matrix();
  if (p.b != 0.0) h += p.b * hopping_operator(p.j).matrix();
  return HermitianOperator(std::move(h));
}

HermitianOperator dkt_static_part(double alpha, double eta, SpinLabel j, double period) {
  if (!(period > 0.0)) throw DomainError("kick period T must be positive");
  const Eigen::VectorXd x = phase_diagonal(j, eta);
  ComplexMatrix a = jplus_half(j);
  for (Index k = 0; k < j.dim(); ++k) a.col(k) *= std::polar(alpha / period, x[k]);
  return HermitianOperator(a + a.adjoint());
}

}  // namespace kickspec::su2
