#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "kickspec/config.hpp"
#include "kickspec/multifractal.hpp"
#include "kickspec/operators.hpp"

namespace kickspec::cli {

/// Hamiltonian of the configured system at quasiperiodicity parameter
/// `parameter` (eta for spin systems, sigma for Harper chains).
HermitianOperator build_hamiltonian(const RunConfig& cfg, double parameter);

/// Ascending spectrum at one parameter value. DKT energies are folded as
/// fold(E T); every other system returns raw eigenvalues.
std::vector<double> sweep_spectrum(const RunConfig& cfg, double parameter);

/// Sample points of the configured spectrum run: eigenvalues of the built
/// Hamiltonian, or the evenly spaced test set for the uniform system.
std::vector<double> spectrum_values(const RunConfig& cfg);

/// Scaling spectrum with the configured grids; D_q filled in.
multifractal::ScalingSpectrum analyze_values(const RunConfig& cfg, std::span<const double> values);

/// Eigenvector profiles in ascending-energy order, computed in parallel.
std::vector<multifractal::EigenvectorProfile> eigenstate_profiles(const RunConfig& cfg);

// Each command writes its artifacts into cfg.out_dir and returns their paths.
std::vector<std::filesystem::path> cmd_butterfly(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_analyze_spectrum(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_analyze_eigenstates(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_floquet_compare(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_harper_diff(const RunConfig& cfg);

std::vector<std::filesystem::path> run_command(const RunConfig& cfg);

/// Entry point of the kickspec executable. Exit codes: 0 success, 1 I/O
/// failure, 2 configuration or domain error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kickspec::cli
