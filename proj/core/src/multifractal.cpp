#include "kickspec/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kickspec/errors.hpp"

namespace kickspec::multifractal {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t bin_of(double v, double lo, double range, int n_bins) {
  // Multiply before dividing so integer-valued data land on exact bin edges.
  const double pos = std::floor((v - lo) * static_cast<double>(n_bins) / range);
  if (pos < 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), static_cast<std::size_t>(n_bins - 1));
}

void check_normalised(std::span<const double> w) {
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw DomainError("component weights must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "component weights must sum to 1 (got " << total << ")";
    throw DomainError(msg.str());
  }
}

std::vector<int> usable_scales(std::span<const int> grid) {
  std::vector<int> out;
  for (int n : grid)
    if (n >= 2) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t grid_index(std::span<const double> q_grid, double q) {
  for (std::size_t i = 0; i < q_grid.size(); ++i)
    if (std::abs(q_grid[i] - q) < 1e-12) return i;
  std::ostringstream msg;
  msg << "q = " << q << " is not on the analysis grid";
  throw DomainError(msg.str());
}

// Fits each q's log Z_q table (rows: q, columns: scales) and assembles the
// exponent spectrum.
ScalingSpectrum assemble(std::span<const double> q_grid, std::vector<int> scales,
                         const std::vector<std::vector<double>>& log_z) {
  ScalingSpectrum s;
  s.q_grid.assign(q_grid.begin(), q_grid.end());
  s.scale_grid = std::move(scales);
  std::vector<double> x(s.scale_grid.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::log(static_cast<double>(s.scale_grid[k]));
  for (const auto& row : log_z) {
    LinearFit fit = fit_linear_region(x, row);
    s.tau.push_back(fit.slope);
    s.fit_r2.push_back(fit.r2);
    s.fits.push_back(fit);
  }
  s.mu = fit_mu(s.q_grid, s.tau, s.mu_q_lo, s.mu_q_hi);
  return generalized_dimensions(std::move(s));
}

}  // namespace

BoxMeasure box_probabilities(std::span<const double> sorted_values, int n_bins) {
  if (n_bins < 2) throw DomainError("box counting needs at least 2 bins");
  if (sorted_values.size() < 2) throw DomainError("box counting needs at least 2 values");
  const auto [min_it, max_it] = std::minmax_element(sorted_values.begin(), sorted_values.end());
  const double lo = *min_it;
  const double range = *max_it - lo;
  if (!(range > 0.0)) throw DomainError("degenerate range: all values identical");

  std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
  for (double v : sorted_values) ++counts[bin_of(v, lo, range, n_bins)];

  BoxMeasure m;
  m.n_bins = n_bins;
  m.bin_width = range / n_bins;
  m.lo = lo;
  m.probabilities.resize(counts.size());
  const double total = static_cast<double>(sorted_values.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    m.probabilities[i] = static_cast<double>(counts[i]) / total;
  return m;
}

double partition_sum(std::span<const double> probabilities, double q) {
  if (q < 0.0) throw DomainError("negative moments are not supported");
  double z = 0.0;
  for (double p : probabilities) {
    if (p <= 0.0) continue;
    z += (q == 0.0) ? 1.0 : (q == 1.0 ? p : std::pow(p, q));
  }
  return z;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw DomainError("least squares needs >= 2 paired points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("least squares needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.first = 0;
  fit.last = n;
  double ssr = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ssr += r * r;
    scale += y[i] * y[i];
  }
  if (syy <= 1e-24 * std::max(1.0, scale)) {
    fit.r2 = 1.0;
  } else {
    fit.r2 = std::clamp(1.0 - ssr / syy, 0.0, 1.0);
  }
  return fit;
}

LinearFit fit_linear_region(std::span<const double> x, std::span<const double> y,
                            std::size_t min_window) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw DomainError("linear-region fit needs >= 2 paired points");
  const std::size_t width = std::clamp<std::size_t>(min_window, 2, n);
  LinearFit best;
  bool have = false;
  for (std::size_t len = n; len >= width; --len) {
    for (std::size_t first = 0; first + len <= n; ++first) {
      LinearFit fit = least_squares(x.subspan(first, len), y.subspan(first, len));
      fit.first = first;
      fit.last = first + len;
      if (!have || fit.r2 > best.r2 + 1e-12) {
        best = fit;
        have = true;
      }
    }
    if (len == width) break;
  }
  return best;
}

double ScalingSpectrum::tau_at(double q) const { return tau[grid_index(q_grid, q)]; }
double ScalingSpectrum::dq_at(double q) const { return dq[grid_index(q_grid, q)]; }

std::vector<double> default_q_grid() {
  std::vector<double> q;
  for (int k = 0; k <= 20; ++k)
    if (k != 2) q.push_back(0.5 * k);
  return q;
}

std::vector<int> default_eigenvalue_scales(std::size_t n_values) {
  std::vector<int> out;
  for (int k = 4; k <= 12; ++k) {
    const int n = 1 << k;
    if (static_cast<std::size_t>(n) * 4 <= n_values) out.push_back(n);
  }
  return out;
}

std::vector<int> default_partition_grid(std::size_t dim) {
  std::vector<int> out;
  for (int k = 1; k < 31; ++k) {
    const int m = 1 << k;
    if (static_cast<std::size_t>(m) > dim) break;
    out.push_back(m);
  }
  // Below d = 4 there is a single dyadic count; anchor it with the trivial partition.
  if (out.size() == 1) out.insert(out.begin(), 1);
  return out;
}

ScalingSpectrum tau_spectrum(std::span<const double> values, std::span<const double> q_grid,
                             std::span<const int> scale_grid) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 2 || !(sorted.back() > sorted.front()))
    throw DomainError("degenerate range: spectrum has fewer than 2 distinct values");
  for (double q : q_grid)
    if (q < 0.0) throw DomainError("negative q is not supported");

  std::vector<int> scales = usable_scales(scale_grid);
  if (scales.size() < 4) {
    std::ostringstream msg;
    msg << "box counting needs >= 4 usable scales, got " << scales.size();
    throw DomainError(msg.str());
  }

  std::vector<std::vector<double>> log_z(q_grid.size(), std::vector<double>(scales.size()));
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const BoxMeasure m = box_probabilities(sorted, scales[k]);
    for (std::size_t i = 0; i < q_grid.size(); ++i)
      log_z[i][k] = std::log(partition_sum(m.probabilities, q_grid[i]));
  }
  return assemble(q_grid, std::move(scales), log_z);
}

ScalingSpectrum generalized_dimensions(ScalingSpectrum s) {
  s.dq.assign(s.q_grid.size(), kNaN);
  s.skipped_q1 = false;
  for (std::size_t i = 0; i < s.q_grid.size(); ++i) {
    if (std::abs(s.q_grid[i] - 1.0) < 1e-12) {
      s.skipped_q1 = true;
      continue;
    }
    s.dq[i] = s.tau[i] / (1.0 - s.q_grid[i]);
  }
  return s;
}

double fit_mu(std::span<const double> q_grid, std::span<const double> tau, double q_lo,
              double q_hi) {
  std::vector<double> qs, ts;
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (q_grid[i] >= q_lo - 1e-12 && q_grid[i] <= q_hi + 1e-12) {
      qs.push_back(q_grid[i]);
      ts.push_back(tau[i]);
    }
  }
  if (qs.size() < 2) return kNaN;
  return least_squares(qs, ts).slope;
}

double information_dimension(std::span<const double> values, std::span<const int> scale_grid) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::vector<int> scales = usable_scales(scale_grid);
  if (scales.size() < 2) throw DomainError("information dimension needs >= 2 scales");
  std::vector<double> x, y;
  for (int n : scales) {
    const BoxMeasure m = box_probabilities(sorted, n);
    double entropy = 0.0;
    for (double p : m.probabilities)
      if (p > 0.0) entropy -= p * std::log(p);
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(entropy);
  }
  return fit_linear_region(x, y).slope;
}

double participation_ratio(std::span<const double> weights) {
  check_normalised(weights);
  double s = 0.0;
  for (double w : weights) s += w * w;
  return 1.0 / s;
}

std::vector<double> partition_weights(std::span<const double> weights, int partitions) {
  const std::size_t d = weights.size();
  if (partitions < 1 || static_cast<std::size_t>(partitions) > d)
    throw DomainError("partition count must lie in [1, dim]");
  std::vector<double> out(static_cast<std::size_t>(partitions), 0.0);
  const auto m = static_cast<std::size_t>(partitions);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t begin = i * d / m;
    const std::size_t end = (i + 1) * d / m;
    for (std::size_t c = begin; c < end; ++c) out[i] += weights[c];
  }
  return out;
}

ScalingSpectrum eigenvector_tau(std::span<const double> weights, std::span<const double> q_grid,
                                std::span<const int> partition_grid) {
  check_normalised(weights);
  for (int m : partition_grid)
    if (m < 1) throw DomainError("each partition count must be >= 1");
  std::vector<int> grid(partition_grid.begin(), partition_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) throw DomainError("eigenvector scaling needs >= 2 partition counts");

  std::vector<std::vector<double>> log_z(q_grid.size(), std::vector<double>(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::vector<double> p = partition_weights(weights, grid[k]);
    for (std::size_t i = 0; i < q_grid.size(); ++i)
      log_z[i][k] = std::log(partition_sum(p, q_grid[i]));
  }
  return assemble(q_grid, std::move(grid), log_z);
}

EigenvectorProfile make_profile(std::vector<double> weights, std::span<const double> q_grid,
                                std::span<const int> partition_grid) {
  EigenvectorProfile profile;
  profile.pr = participation_ratio(weights);
  profile.scaling = eigenvector_tau(weights, q_grid, partition_grid);
  profile.weights = std::move(weights);
  return profile;
}

Histogram make_histogram(std::span<const double> values, int bins) {
  if (values.empty()) throw DomainError("histogram of an empty sample");
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  Histogram h;
  h.lo = *min_it;
  h.hi = *max_it;
  if (!(h.hi > h.lo)) {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  const double range = h.hi - h.lo;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) ++h.counts[bin_of(v, h.lo, range, bins)];
  const double width = range / bins;
  for (std::size_t c : h.counts)
    h.density.push_back(static_cast<double>(c) / (static_cast<double>(values.size()) * width));
  return h;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw DomainError("summary of an empty sample");
  Summary s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  for (double v : values) s.variance += (v - s.mean) * (v - s.mean);
  s.variance /= n;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

EnsembleStatistics ensemble_statistics(std::span<const EigenvectorProfile> profiles, int bins,
                                       const EnsembleThresholds& thresholds) {
  if (profiles.empty()) throw DomainError("ensemble statistics of an empty list");
  std::vector<double> d2, d5, mu, pr;
  for (const auto& p : profiles) {
    d2.push_back(p.d_bar(2.0));
    d5.push_back(p.d_bar(5.0));
    mu.push_back(p.mu_bar());
    pr.push_back(p.pr);
  }
  auto fraction = [](const std::vector<double>& v, auto pred) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), pred)) /
           static_cast<double>(v.size());
  };
  EnsembleStatistics st;
  st.count = profiles.size();
  st.d2 = make_histogram(d2, bins);
  st.d5 = make_histogram(d5, bins);
  st.mu = make_histogram(mu, bins);
  st.pr = make_histogram(pr, bins);
  st.d2_summary = summarize(d2);
  st.d5_summary = summarize(d5);
  st.mu_summary = summarize(mu);
  st.pr_summary = summarize(pr);
  st.fraction_pr_below = fraction(pr, [&](double v) { return v < thresholds.pr_localized; });
  st.fraction_d2_small = fraction(d2, [&](double v) { return v < thresholds.d_small; });
  st.fraction_d5_small = fraction(d5, [&](double v) { return v < thresholds.d_small; });
  auto fractal = [&](double v) { return v >= thresholds.fractal_lo && v <= thresholds.fractal_hi; };
  st.fraction_d2_fractal = fraction(d2, fractal);
  st.fraction_d5_fractal = fraction(d5, fractal);
  return st;
}

DensityTable spectral_histogram(std::span<const double> values, int n_bins,
                                std::optional<Window> window) {
  if (n_bins < 1) throw DomainError("density table needs at least one bin");
  if (values.empty()) throw DomainError("density table of an empty spectrum");
  DensityTable t;
  if (window) {
    t.lo = window->lo;
    t.hi = window->hi;
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    t.lo = *lo;
    t.hi = *hi;
  }
  if (!(t.hi > t.lo)) throw DomainError("empty spectral window");
  std::vector<double> inside;
  for (double v : values)
    if (v >= t.lo && v <= t.hi) inside.push_back(v);
  if (inside.empty()) throw DomainError("no eigenvalues inside the spectral window");

  const double range = t.hi - t.lo;
  const double width = range / n_bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
  for (double v : inside) ++counts[bin_of(v, t.lo, range, n_bins)];
  for (int b = 0; b < n_bins; ++b) {
    t.centers.push_back(t.lo + (b + 0.5) * width);
    t.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                        (static_cast<double>(inside.size()) * width));
  }
  return t;
}

}  // namespace kickspec::multifractal
