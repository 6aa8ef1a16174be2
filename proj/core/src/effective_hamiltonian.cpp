#include "kickspec/effective_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "kickspec/errors.hpp"
#include "kickspec/linalg.hpp"

namespace kickspec {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionMismatch("operators must be square and of equal dimension");
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) { return 0.5 * (x + x.adjoint()); }

// Partial sums of 1/k and 1/k^2, index 0 holds 0.
struct HarmonicSums {
  explicit HarmonicSums(long n) : h1(static_cast<std::size_t>(n) + 1), h2(h1.size()) {
    long double s1 = 0.0L, s2 = 0.0L;
    h1[0] = h2[0] = 0.0L;
    for (long k = 1; k <= n; ++k) {
      const long double kk = static_cast<long double>(k);
      s1 += 1.0L / kk;
      s2 += 1.0L / (kk * kk);
      h1[static_cast<std::size_t>(k)] = s1;
      h2[static_cast<std::size_t>(k)] = s2;
    }
  }
  // sum_{k=lo..hi} 1/k, zero for empty ranges.
  long double inv(long lo, long hi) const {
    if (hi < lo) return 0.0L;
    return h1[static_cast<std::size_t>(hi)] - h1[static_cast<std::size_t>(lo - 1)];
  }
  long double inv_sq(long lo, long hi) const {
    if (hi < lo) return 0.0L;
    return h2[static_cast<std::size_t>(hi)] - h2[static_cast<std::size_t>(lo - 1)];
  }
  std::vector<long double> h1, h2;
};

// Identifies one distinct coefficient matrix: 0 is V0, +r is run r-1, -r is
// the adjoint of run r-1 (i.e. a negative harmonic).
using Entity = int;

class EntityTable {
 public:
  explicit EntityTable(const FourierSeries& f) : f_(f) {}

  const ComplexMatrix& get(Entity e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    ComplexMatrix m;
    if (e == 0) {
      m = f_.v0().matrix();
    } else if (e > 0) {
      m = f_.runs()[static_cast<std::size_t>(e - 1)].coefficient;
    } else {
      m = f_.runs()[static_cast<std::size_t>(-e - 1)].coefficient.adjoint();
    }
    return cache_.emplace(e, std::move(m)).first->second;
  }

 private:
  const FourierSeries& f_;
  std::map<Entity, ComplexMatrix> cache_;
};

}  // namespace

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return linalg::multiply(a, b) - linalg::multiply(b, a);
}

KickedSystem::KickedSystem(HermitianOperator h0, HermitianOperator kick, double period)
    : h0_(std::move(h0)), kick_(std::move(kick)), period_(period) {
  if (h0_.dim() != kick_.dim()) throw DimensionMismatch("H0 and V must have equal dimension");
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw DomainError("kick period T must be positive and finite");
}

double KickedSystem::omega() const { return 2.0 * kPi / period_; }

FourierSeries::FourierSeries(HermitianOperator v0, std::vector<Run> runs)
    : v0_(std::move(v0)), runs_(std::move(runs)) {
  long previous = 0;
  for (const Run& r : runs_) {
    if (r.first <= previous || r.last < r.first)
      throw DomainError("Fourier runs must be ordered, disjoint and start at n >= 1");
    require_same_dim(r.coefficient, v0_.matrix());
    previous = r.last;
  }
}

ComplexMatrix FourierSeries::coefficient(long n) const {
  if (n == 0) return v0_.matrix();
  const long k = std::abs(n);
  auto it = std::find_if(runs_.begin(), runs_.end(),
                         [k](const Run& r) { return r.first <= k && k <= r.last; });
  if (it == runs_.end()) return ComplexMatrix::Zero(dim(), dim());
  return n > 0 ? it->coefficient : ComplexMatrix(it->coefficient.adjoint());
}

FourierSeries kick_fourier_coefficients(const HermitianOperator& v, double period, long n_max) {
  if (!(period > 0.0)) throw DomainError("kick period T must be positive");
  if (n_max < 1) throw DomainError("Fourier truncation N_max must be >= 1");
  HermitianOperator v0 = (1.0 / period) * v;
  std::vector<FourierSeries::Run> runs;
  runs.push_back({1, n_max, v0.matrix()});
  return FourierSeries(std::move(v0), std::move(runs));
}

HermitianOperator heff_general(const HermitianOperator& h0, const FourierSeries& f,
                               double omega) {
  if (h0.dim() != f.dim()) throw DimensionMismatch("H0 and Fourier coefficients differ in dimension");
  if (!(omega > 0.0)) throw DomainError("driving frequency must be positive");

  const auto& runs = f.runs();
  const long n_max = f.n_max();
  const HarmonicSums sums(n_max);
  const ComplexMatrix& h = h0.matrix();
  ComplexMatrix result = h + f.v0().matrix();

  // First and second order: single sums, one commutator chain per run.
  ComplexMatrix first = ComplexMatrix::Zero(h.rows(), h.cols());
  ComplexMatrix second = first;
  for (const auto& r : runs) {
    const ComplexMatrix& m = r.coefficient;
    const ComplexMatrix md = m.adjoint();
    const ComplexMatrix c1 = commutator(m, md);
    if (max_abs(c1) != 0.0) first += static_cast<double>(sums.inv(r.first, r.last)) * c1;
    const ComplexMatrix c2 = commutator(commutator(m, h), md);
    second += static_cast<double>(sums.inv_sq(r.first, r.last)) * (c2 + c2.adjoint());
  }
  result += first / omega;
  result += second / (2.0 * omega * omega);

  // Double sum. Collect scalar weights per (Vn, Vm', third) entity triple,
  // then evaluate each distinct nested commutator once.
  std::map<std::tuple<Entity, Entity, Entity>, long double> weights;
  const auto nr = static_cast<Entity>(runs.size());
  for (Entity rn = 0; rn < nr; ++rn) {
    const auto& run_n = runs[static_cast<std::size_t>(rn)];
    for (Entity rm = 0; rm < nr; ++rm) {
      const auto& run_m = runs[static_cast<std::size_t>(rm)];
      for (long n = run_n.first; n <= run_n.last; ++n) {
        const long double inv_n = 1.0L / static_cast<long double>(n);
        for (Entity rk = 0; rk < nr; ++rk) {
          const auto& run_k = runs[static_cast<std::size_t>(rk)];
          // [Vn, [Vm, V_{-(n+m)}]], n + m in run_k.
          {
            const long lo = std::max(run_m.first, run_k.first - n);
            const long hi = std::min(run_m.last, run_k.last - n);
            if (lo <= hi)
              weights[{rn + 1, rm + 1, -(rk + 1)}] += inv_n * sums.inv(lo, hi);
          }
          // -2 [Vn, [V_{-m}, V_{m-n}]], m - n in run_k.
          {
            const long lo = std::max(run_m.first, n + run_k.first);
            const long hi = std::min(run_m.last, n + run_k.last);
            if (lo <= hi)
              weights[{rn + 1, -(rm + 1), rk + 1}] += -2.0L * inv_n * sums.inv(lo, hi);
          }
          // -2 [Vn, [V_{-m}, V_{m-n}]], n - m in run_k (negative harmonic).
          {
            const long lo = std::max({run_m.first, n - run_k.last, 1L});
            const long hi = std::min(run_m.last, n - run_k.first);
            if (lo <= hi)
              weights[{rn + 1, -(rm + 1), -(rk + 1)}] += -2.0L * inv_n * sums.inv(lo, hi);
          }
        }
        // m = n picks up V0.
        if (run_m.first <= n && n <= run_m.last)
          weights[{rn + 1, -(rm + 1), 0}] += -2.0L * inv_n * inv_n;
      }
    }
  }

  EntityTable table(f);
  ComplexMatrix nested = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const auto& [key, w] : weights) {
    const auto [a, b, c] = key;
    if (w == 0.0L) continue;
    const ComplexMatrix inner = commutator(table.get(b), table.get(c));
    if (max_abs(inner) == 0.0) continue;
    nested += static_cast<double>(w) * commutator(table.get(a), inner);
  }
  result += (nested + nested.adjoint()) / (3.0 * omega * omega);

  return HermitianOperator(hermitian_part(result));
}

HermitianOperator heff_delta_kicked(const KickedSystem& sys) {
  const ComplexMatrix& h0 = sys.h0().matrix();
  const ComplexMatrix& v = sys.kick().matrix();
  ComplexMatrix result = h0 + v / sys.period();
  // sum 1/n^2 = pi^2/6 combined with 1/(w^2 T^2) = 1/(4 pi^2) gives 1/24.
  result += commutator(commutator(v, h0), v) / 24.0;
  return HermitianOperator(hermitian_part(result));
}

ComplexMatrix micromotion_kick(const KickedSystem& sys, const FourierSeries& f, double t,
                               int order) {
  if (order != 1 && order != 2) throw DomainError("micromotion order must be 1 or 2");
  if (sys.dim() != f.dim()) throw DimensionMismatch("system and Fourier series differ in dimension");

  const double period = sys.period();
  const double omega = sys.omega();
  double t_red = std::fmod(t, period);
  if (t_red < 0.0) t_red += period;
  const double theta = omega * t_red;

  const long n_max = f.n_max();
  // phase[k + 2 n_max] = exp(i k theta) for k in [-2 n_max, 2 n_max].
  std::vector<Complex> phase(static_cast<std::size_t>(4 * n_max + 1));
  for (long k = -2 * n_max; k <= 2 * n_max; ++k)
    phase[static_cast<std::size_t>(k + 2 * n_max)] = std::polar(1.0, static_cast<double>(k) * theta);
  auto e = [&](long k) { return phase[static_cast<std::size_t>(k + 2 * n_max)]; };

  const Complex minus_i(0.0, -1.0);  // 1 / i
  const auto& runs = f.runs();
  const Index d = sys.dim();

  // Accumulates X; the Hermitian term is (1/i)(X - X^dagger) / scale.
  ComplexMatrix x1 = ComplexMatrix::Zero(d, d);
  for (const auto& r : runs) {
    Complex c(0.0, 0.0);
    for (long n = r.first; n <= r.last; ++n) c += e(n) / static_cast<double>(n);
    x1 += c * r.coefficient;
  }
  ComplexMatrix out = minus_i * (x1 - x1.adjoint()) / omega;
  if (order == 1) return out;

  const ComplexMatrix static_part = sys.h0().matrix() + f.v0().matrix();
  ComplexMatrix x2 = ComplexMatrix::Zero(d, d);
  for (const auto& r : runs) {
    const ComplexMatrix k = commutator(r.coefficient, static_part);
    if (max_abs(k) == 0.0) continue;
    Complex s(0.0, 0.0);
    for (long n = r.first; n <= r.last; ++n)
      s += e(n) / (static_cast<double>(n) * static_cast<double>(n));
    x2 += s * k;
  }

  ComplexMatrix x3 = ComplexMatrix::Zero(d, d);
  for (const auto& rn : runs) {
    for (const auto& rm : runs) {
      // [Vn, Vm] e^{i(n+m)wt} / (n (n+m))
      const ComplexMatrix k_sum = commutator(rn.coefficient, rm.coefficient);
      if (max_abs(k_sum) != 0.0) {
        Complex s(0.0, 0.0);
        for (long n = rn.first; n <= rn.last; ++n)
          for (long m = rm.first; m <= rm.last; ++m)
            s += e(n + m) / (static_cast<double>(n) * static_cast<double>(n + m));
        x3 += s * k_sum;
      }
      // [Vn, V-m] e^{i(n-m)wt} / (n (n-m)), n != m
      const ComplexMatrix k_diff = commutator(rn.coefficient, rm.coefficient.adjoint());
      if (max_abs(k_diff) != 0.0) {
        Complex s(0.0, 0.0);
        for (long n = rn.first; n <= rn.last; ++n)
          for (long m = rm.first; m <= rm.last; ++m)
            if (n != m) s += e(n - m) / (static_cast<double>(n) * static_cast<double>(n - m));
        x3 += s * k_diff;
      }
    }
  }

  out += minus_i * (x2 - x2.adjoint()) / (omega * omega);
  out += minus_i * (x3 - x3.adjoint()) / (2.0 * omega * omega);
  return out;
}

}  // namespace kickspec
