#pragma once

#include <vector>

#include "kickspec/effective_hamiltonian.hpp"
#include "kickspec/operators.hpp"

namespace kickspec::harper {

enum class Boundary { Open, Periodic };

struct HarperParams {
  int length = 2;          // L >= 2 sites, labelled n = 1..L
  double sigma = 0.0;      // modulation 2 cos(2 pi n sigma)
  double alpha = 1.0;      // overall coupling of the kicked system
  double period = 1.0;     // kick period T
  double onsite = 2.0;     // amplitude of the cosine potential
  Boundary boundary = Boundary::Open;
};

/// sum_n onsite cos(2 pi n sigma)|n><n| + (|n><n+1| + h.c.).
HermitianOperator harper_hamiltonian(const HarperParams& p);

/// H0 = alpha * hopping, V = alpha * onsite * cos(2 pi n sigma) on the diagonal.
KickedSystem kicked_harper_system(const HarperParams& p);

enum class KickedMode {
  ClosedForm,  // H^(h) - (onsite/2)^2 (1/6) sum cos^2(2 pi n sigma)(|n><n+1| + h.c.)
  General,     // heff_delta_kicked(kicked_harper_system(p)) / alpha
};

HermitianOperator kicked_harper_effective(const HarperParams& p, KickedMode mode);

struct BondDiscrepancy {
  int site = 0;           // bond (site, site + 1), 1-based; L for the periodic wrap bond
  double closed_form = 0.0;
  double general = 0.0;
  double difference = 0.0;  // closed_form - general
};

struct DiscrepancyReport {
  double max_abs = 0.0;        // over all matrix entries
  double energy_scale = 1.0;   // alpha, the factor divided out of General mode
  std::vector<BondDiscrepancy> bonds;
};

/// Entry-wise comparison of the two kicked-Harper constructions.
DiscrepancyReport heff_discrepancy_report(const HarperParams& p);

}  // namespace kickspec::harper
