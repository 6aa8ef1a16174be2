#pragma once

#include <vector>

#include "kickspec/operators.hpp"

namespace kickspec {

/// AB - BA. Throws DimensionMismatch on unequal shapes.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// H(t) = H0 + V * sum_n delta(t - nT): one kick of strength V per period at
/// t = 0 (mod T).
class KickedSystem {
 public:
  KickedSystem(HermitianOperator h0, HermitianOperator kick, double period);

  const HermitianOperator& h0() const { return h0_; }
  const HermitianOperator& kick() const { return kick_; }
  double period() const { return period_; }
  double omega() const;
  Index dim() const { return h0_.dim(); }

 private:
  HermitianOperator h0_;
  HermitianOperator kick_;
  double period_;
};

/// Fourier coefficients V_0, V_1..V_{N_max} of a Hermitian periodic potential;
/// V_{-n} = V_n^dagger is implied. Harmonics are stored as runs of identical
/// matrices so that a delta comb with N_max = 10^6 costs one matrix.
class FourierSeries {
 public:
  struct Run {
    long first;  // inclusive harmonic index, >= 1
    long last;   // inclusive
    ComplexMatrix coefficient;
  };

  FourierSeries(HermitianOperator v0, std::vector<Run> runs);

  const HermitianOperator& v0() const { return v0_; }
  const std::vector<Run>& runs() const { return runs_; }
  long n_max() const { return runs_.empty() ? 0 : runs_.back().last; }
  Index dim() const { return v0_.dim(); }

  /// V_n for any signed n; zero beyond N_max.
  ComplexMatrix coefficient(long n) const;

 private:
  HermitianOperator v0_;
  std::vector<Run> runs_;
};

/// Dirac comb: V_0 = V_n = V / T for n = 1..N_max.
FourierSeries kick_fourier_coefficients(const HermitianOperator& v, double period, long n_max);

/// Second-order high-frequency expansion from Fourier coefficients:
///   H0 + V0 + (1/w) sum 1/n [Vn, V-n]
///   + 1/(2w^2) sum 1/n^2 ([[Vn, H0], V-n] + h.c.)
///   + 1/(3w^2) sum_{n,m} 1/(nm) ([Vn,[Vm,V-n-m]] - 2[Vn,[V-m,Vm-n]] + h.c.)
/// with coefficients beyond N_max taken as zero. Harmonic sums are truncated
/// at N_max and kept explicit.
HermitianOperator heff_general(const HermitianOperator& h0, const FourierSeries& f, double omega);

/// Closed form for a delta-kicked system: H0 + V/T + [[V, H0], V] / 24.
HermitianOperator heff_delta_kicked(const KickedSystem& sys);

/// Micromotion generator F(t) (Hermitian, periodic, zero mean) through first
/// or second order in 1/w, with sums truncated at the series' N_max. The
/// kick transformation is exp(i F(t)). Throws DomainError unless order is 1 or 2.
ComplexMatrix micromotion_kick(const KickedSystem& sys, const FourierSeries& f, double t,
                               int order);

}  // namespace kickspec
