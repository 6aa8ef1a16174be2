#pragma once

#include <optional>

#include "kickspec/operators.hpp"

namespace kickspec::su2 {

/// Angular-momentum matrices in the J_z eigenbasis, ascending m = -j..+j.
/// `jplus` is (Jx + i Jy) / 2, half of the conventional raising operator.
struct SpinOperators {
  HermitianOperator jx;
  HermitianOperator jy;
  HermitianOperator jz;
  ComplexMatrix jplus;
};

SpinOperators spin_operators(SpinLabel j);

// Individual generators, for callers that do not want all four d x d matrices.
HermitianOperator jx(SpinLabel j);
HermitianOperator jz(SpinLabel j);
ComplexMatrix jplus_half(SpinLabel j);

/// Nearest-neighbour hopping matrix: ones on the first off-diagonals.
HermitianOperator hopping_operator(SpinLabel j);

/// Diagonal of the quasiperiodic phase operator, eta (2m + 1) / (2j).
Eigen::VectorXd phase_diagonal(SpinLabel j, double eta);

/// diag(eta (2m + 1) / (2j)). Throws DomainError for j = 0.
HermitianOperator phase_operator(SpinLabel j, double eta);

/// Choice of the operator C multiplying cos(X) in the SU(2) family.
enum class CouplingKind {
  JPlusHalf,      // C = (alpha / 2)(Jx + i Jy)
  Jx,             // C = alpha Jx
  HalfIdentity,   // C = 1 / 2
  IdentityAlpha,  // C = alpha
};

struct Su2FamilyParams {
  double a = 0.0;
  double b = 0.0;
  CouplingKind c_kind = CouplingKind::IdentityAlpha;
  double alpha = 1.0;
  double eta = 0.0;
  SpinLabel j = SpinLabel::from_twice(2);
};

/// The six tabulated members of the family, labelled 'a'..'f'. Case 'e' needs
/// epsilon (b = epsilon * alpha); ConfigError if it is missing or the label
/// is unknown.
Su2FamilyParams table_case(char label, SpinLabel j, double alpha, double eta,
                           std::optional<double> epsilon = std::nullopt);

/// a Jx + b A + [C cos(X) + h.c.].
HermitianOperator general_su2_hamiltonian(const Su2FamilyParams& p);

/// Static part of the single-kicked form of the double kicked top,
/// (alpha / T)(J+ e^{iX} + h.c.) with J+ = (Jx + i Jy) / 2. This is the
/// normalisation for which exp(-i H0 T) exp(-i alpha Jx) reproduces
/// floquet::dkt_floquet exactly; at eta = 0 it reduces to (alpha / T) Jx.
HermitianOperator dkt_static_part(double alpha, double eta, SpinLabel j, double period);

}  // namespace kickspec::su2
