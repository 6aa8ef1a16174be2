#pragma once

#include <vector>

#include "kickspec/effective_hamiltonian.hpp"
#include "kickspec/operators.hpp"

namespace kickspec::floquet {

/// Maps x into (-pi, pi] as ((x + pi) mod 2pi) - pi with the endpoint -pi sent to +pi.
double fold_phase(double x);

/// exp(-i s H) through the Hermitian eigendecomposition of H.
UnitaryOperator unitary_from_hermitian(const HermitianOperator& h, double s);

/// exp{-i alpha (J+ e^{iX} + h.c.)} exp(-i alpha Jx), X = eta (2Jz + 1) / 2j,
/// J+ = (Jx + i Jy) / 2.
UnitaryOperator dkt_floquet(double alpha, double eta, SpinLabel j);

/// Single-kicked form of the double kicked top: H0 = su2::dkt_static_part,
/// V = alpha Jx, kick period T.
KickedSystem dkt_system(double alpha, double eta, SpinLabel j, double period = 1.0);

/// One-period propagator of a delta-kicked system starting just before a
/// kick: exp(-i H0 T) exp(-i V).
UnitaryOperator kicked_floquet(const KickedSystem& sys);

struct QuasienergySpectrum {
  std::vector<double> phases;  // ascending, each in (-pi, pi]
};

/// Quasienergy phases theta_k = fold(-arg lambda_k) of the eigenvalues of U,
/// so that exp(-i H T) has phases fold(E_k T). Throws NumericalError when an
/// eigenvalue modulus is farther than 1e-8 from one.
QuasienergySpectrum quasienergy_spectrum(const UnitaryOperator& u);

/// max_k |fold(E_k T) - theta_k| over sorted pairs, for the effective
/// Hamiltonian of dkt_system(alpha, eta, j, 1) against dkt_floquet(alpha, eta, j).
/// Differences are measured on the circle.
double effective_vs_floquet_error(double alpha, double eta, SpinLabel j);

/// Sorted-pair circular distance between two phase lists of equal length.
double max_phase_mismatch(std::vector<double> a, std::vector<double> b);

}  // namespace kickspec::floquet
