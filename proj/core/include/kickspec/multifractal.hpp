#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kickspec::multifractal {

/// Box-counting measure of a set of points: equal-width bins over
/// [min, max], rightmost bin closed.
struct BoxMeasure {
  std::vector<double> probabilities;  // p_s(i), sums to 1
  int n_bins = 0;
  double bin_width = 0.0;
  double lo = 0.0;
};

/// Throws DomainError for fewer than two distinct values or n_bins < 2.
BoxMeasure box_probabilities(std::span<const double> sorted_values, int n_bins);

/// Z_q = sum_i p_i^q over occupied bins. q = 0 counts occupied bins;
/// q < 0 is rejected.
double partition_sum(std::span<const double> probabilities, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t first = 0;  // window [first, last) into the abscissa
  std::size_t last = 0;
};

/// Ordinary least squares over all points. A series with no spread in y is
/// fitted exactly and reports r2 = 1.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Among contiguous windows of at least min(min_window, n) points, the fit
/// with the largest r2; ties go to the longer, then the earlier window.
LinearFit fit_linear_region(std::span<const double> x, std::span<const double> y,
                            std::size_t min_window = 5);

/// Exponent bookkeeping shared by eigenvalue and eigenvector analyses.
/// Convention: tau_q is the slope of log Z_q against log(number of boxes), so a
/// uniform measure has tau_q = 1 - q and D_q = tau_q / (1 - q) = 1.
struct ScalingSpectrum {
  std::vector<double> q_grid;
  std::vector<double> tau;
  std::vector<double> dq;            // NaN where q == 1
  std::vector<double> fit_r2;
  std::vector<LinearFit> fits;       // per q, windows index scale_grid
  std::vector<int> scale_grid;       // box or partition counts, ascending
  double mu = 0.0;                   // slope of tau_q vs q over [mu_q_lo, mu_q_hi]
  double mu_q_lo = 2.0;
  double mu_q_hi = 8.0;
  bool skipped_q1 = false;

  /// tau or D at a grid value of q; throws DomainError if q is not on the grid.
  double tau_at(double q) const;
  double dq_at(double q) const;
};

/// {0, 0.5, ..., 10} without q = 1.
std::vector<double> default_q_grid();

/// Bin counts 2^4 .. 2^12, keeping those <= n_values / 4.
std::vector<int> default_eigenvalue_scales(std::size_t n_values);

/// Partition counts 2^1 .. 2^k with 2^k <= dim; for dim < 4 the list is {1, 2}.
std::vector<int> default_partition_grid(std::size_t dim);

/// Box-counting exponents of a point set (typically an energy spectrum).
/// Values need not be sorted. Throws DomainError for a degenerate range or
/// fewer than 4 usable scales (bin counts >= 2).
ScalingSpectrum tau_spectrum(std::span<const double> values, std::span<const double> q_grid,
                             std::span<const int> scale_grid);

/// Fills dq = tau / (1 - q); q == 1 entries become NaN and set skipped_q1.
ScalingSpectrum generalized_dimensions(ScalingSpectrum s);

/// Slope of tau_q against q for grid points inside [q_lo, q_hi]; NaN if fewer
/// than two such points.
double fit_mu(std::span<const double> q_grid, std::span<const double> tau, double q_lo = 2.0,
              double q_hi = 8.0);

/// Information dimension: slope of -sum p log p against log(number of boxes).
double information_dimension(std::span<const double> values, std::span<const int> scale_grid);

/// Per-eigenvector multifractal profile.
struct EigenvectorProfile {
  std::vector<double> weights;  // |c_m|^2, normalised
  double pr = 0.0;
  ScalingSpectrum scaling;      // tau_bar, d_bar, mu_bar

  double d_bar(double q) const { return scaling.dq_at(q); }
  double mu_bar() const { return scaling.mu; }
};

/// 1 / sum_m w_m^2. Throws DomainError if the weights do not sum to 1
/// within 1e-8 or are negative.
double participation_ratio(std::span<const double> weights);

/// Partition weights p~(i) for M positional partitions with boundaries
/// floor(i d / M); sizes differ by at most one when M does not divide d.
std::vector<double> partition_weights(std::span<const double> weights, int partitions);

/// tau_bar_q from log sum_i p~(i)^q against log M, so D_bar_2 = -tau_bar_2 and
/// D_bar_5 = -tau_bar_5 / 4. M = 1 is the whole vector (Z_q = 1). Throws
/// DomainError for unnormalised weights, M < 1 or fewer than two distinct M.
ScalingSpectrum eigenvector_tau(std::span<const double> weights, std::span<const double> q_grid,
                                std::span<const int> partition_grid);

EigenvectorProfile make_profile(std::vector<double> weights, std::span<const double> q_grid,
                                std::span<const int> partition_grid);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
  std::vector<double> density;  // counts / (total * width)
};

/// Equal-width histogram over [min, max] of the data. Identical data collapse
/// into the middle bin of [v - 0.5, v + 0.5].
Histogram make_histogram(std::span<const double> values, int bins);

struct Summary {
  double mean = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> values);

struct EnsembleThresholds {
  double pr_localized = 20.0;    // PR below this counts as localized
  double d_small = 0.05;         // D_bar below this counts as non-fractal
  double fractal_lo = 0.1;       // window for "significant fractal behaviour"
  double fractal_hi = 0.8;
};

struct EnsembleStatistics {
  std::size_t count = 0;
  Histogram d2, d5, mu, pr;
  Summary d2_summary, d5_summary, mu_summary, pr_summary;
  double fraction_pr_below = 0.0;
  double fraction_d2_small = 0.0;
  double fraction_d5_small = 0.0;
  double fraction_d2_fractal = 0.0;
  double fraction_d5_fractal = 0.0;
};

/// Distributions of D_bar_2, D_bar_5, mu_bar and PR. Needs q = 2 and q = 5 on
/// every profile's grid; throws DomainError for an empty list.
EnsembleStatistics ensemble_statistics(std::span<const EigenvectorProfile> profiles, int bins,
                                       const EnsembleThresholds& thresholds = {});

struct Window {
  double lo;
  double hi;
};

struct DensityTable {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> centers;
  std::vector<double> density;  // normalised over the values inside the window
};

/// Level density over the full range or a sub-window. Throws DomainError for
/// an empty window (no values, or lo >= hi).
DensityTable spectral_histogram(std::span<const double> values, int n_bins,
                                std::optional<Window> window = std::nullopt);

}  // namespace kickspec::multifractal
