#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library: matrices are plain nested vectors and every formula is written out
// directly.

#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

Mat zeros(std::size_t n);
Mat product(const Mat& a, const Mat& b);
Mat bracket(const Mat& a, const Mat& b);  // ab - ba by explicit triple loops
Mat add(const Mat& a, const Mat& b, double sb = 1.0);
Mat scale(const Mat& a, double s);

/// Spin matrices from the textbook ladder elements, basis m = -j..j ascending.
/// jplus_full is the conventional raising operator.
struct Spin {
  Mat jx, jy, jz, jplus_full;
};
Spin spin(int twice_j);

/// 2x2 case H0 = diag(h, -h), V = v sigma_x worked out by hand:
/// [V, H0] = [[0, -2hv], [2hv, 0]], [[V, H0], V] = diag(-4hv^2, 4hv^2).
Mat hand_heff_2x2(double h, double v, double period);

/// H0 + V/T + [[V, H0], V] / 24 with brackets taken by brute force.
Mat brute_heff(const Mat& h0, const Mat& v, double period);

/// 2 sum_{n=1}^{N} sin(n theta) / n.
double sawtooth_partial_sum(double theta, long n_terms);

/// sum_{n=1}^{N} 1/n^2.
double inverse_square_partial_sum(long n_terms);

/// Weights of the binomial cascade: weight of cell i is p^{#zero bits} (1-p)^{#one bits}
/// over `depth` bits, most significant bit first.
std::vector<double> binomial_cascade_weights(double p, int depth);

/// Sorted integer-valued sample of the cascade: cell i contributes
/// round(w_i * total) copies of the value i, plus one point at 2^depth so the
/// data range is exactly 2^depth. Power-of-two bin counts then align with the
/// cascade cells.
std::vector<double> binomial_cascade_points(double p, int depth, long total);

/// Cascade exponent with tau_q = (1 - q) D_q, which is log2(p^q + (1-p)^q).
/// The textbook value in the Z ~ s^tau convention is its negative.
double binomial_cascade_tau(double p, double q);

/// Left endpoints of the depth-k triadic Cantor construction as integers in
/// [0, 3^k], plus the right endpoint 3^k.
std::vector<double> cantor_points(int depth);

/// Eigenvalues 2 cos(k pi / (d + 1)), k = 1..d, ascending.
std::vector<double> tridiagonal_toeplitz_eigenvalues(int d);

}  // namespace oracle
