#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "kickspec/effective_hamiltonian.hpp"
#include "kickspec/floquet.hpp"
#include "kickspec/linalg.hpp"
#include "kickspec/multifractal.hpp"
#include "kickspec/su2.hpp"

using namespace kickspec;
namespace mf = kickspec::multifractal;

namespace {

HermitianOperator dkt_heff(double j) {
  return heff_delta_kicked(floquet::dkt_system(1.0 / j, kGoldenRatio * j, SpinLabel(j), 1.0));
}

// Random dense Hermitian matrix of the same size as the DKT operator, forcing the dense driver.
HermitianOperator dense_random(Index d) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  ComplexMatrix a(d, d);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < d; ++r) a(r, c) = Complex(g(rng), g(rng));
  return HermitianOperator(ComplexMatrix(0.5 * (a + a.adjoint())));
}

void BM_BandedEigenvalues(benchmark::State& state) {
  const auto h = dkt_heff(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::eigenvalues(h));
  state.counters["dim"] = static_cast<double>(h.dim());
}
BENCHMARK(BM_BandedEigenvalues)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_DenseEigenvalues(benchmark::State& state) {
  const auto h = dense_random(2 * state.range(0) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::eigenvalues(h));
  state.counters["dim"] = static_cast<double>(h.dim());
}
BENCHMARK(BM_DenseEigenvalues)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_TauSpectrum(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u;
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (double& v : values) v = u(rng);
  std::sort(values.begin(), values.end());
  const auto q = mf::default_q_grid();
  const auto scales = mf::default_eigenvalue_scales(values.size());
  for (auto _ : state) benchmark::DoNotOptimize(mf::tau_spectrum(values, q, scales));
}
BENCHMARK(BM_TauSpectrum)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMicrosecond);

void BM_EigenvectorTau(benchmark::State& state) {
  std::mt19937_64 rng(13);
  std::exponential_distribution<double> e;
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  double total = 0.0;
  for (double& x : w) total += x = e(rng);
  for (double& x : w) x /= total;
  const auto q = mf::default_q_grid();
  const auto grid = mf::default_partition_grid(w.size());
  for (auto _ : state) benchmark::DoNotOptimize(mf::eigenvector_tau(w, q, grid));
}
BENCHMARK(BM_EigenvectorTau)->Arg(1001)->Arg(2001)->Arg(5001)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
