#include "kickspec/harper.hpp"

#include <cmath>
#include <sstream>

#include "kickspec/errors.hpp"

namespace kickspec::harper {
namespace {

void validate(const HarperParams& p) {
  if (p.length < 2) {
    std::ostringstream msg;
    msg << "Harper chain needs L >= 2 sites, got " << p.length;
    throw DomainError(msg.str());
  }
  if (!std::isfinite(p.sigma)) throw DomainError("Harper sigma must be finite");
}

Eigen::VectorXd cosines(const HarperParams& p) {
  Eigen::VectorXd c(p.length);
  for (int n = 1; n <= p.length; ++n) c[n - 1] = std::cos(2.0 * kPi * n * p.sigma);
  return c;
}

// Hopping with per-bond amplitude; bond b joins sites b and b+1 (0-based),
// and with periodic boundary the last bond wraps to site 0.
ComplexMatrix chain(const Eigen::VectorXd& diag, const Eigen::VectorXd& bonds, Boundary boundary) {
  const Index l = diag.size();
  ComplexMatrix m = ComplexMatrix::Zero(l, l);
  m.diagonal() = diag.cast<Complex>();
  for (Index b = 0; b + 1 < l; ++b) {
    m(b, b + 1) += bonds[b];
    m(b + 1, b) += bonds[b];
  }
  if (boundary == Boundary::Periodic) {
    m(l - 1, 0) += bonds[l - 1];
    m(0, l - 1) += bonds[l - 1];
  }
  return m;
}

Index bond_count(const HarperParams& p) {
  return p.boundary == Boundary::Periodic ? p.length : p.length - 1;
}

}  // namespace

HermitianOperator harper_hamiltonian(const HarperParams& p) {
  validate(p);
  const Eigen::VectorXd diag = p.onsite * cosines(p);
  return HermitianOperator(chain(diag, Eigen::VectorXd::Ones(p.length), p.boundary));
}

KickedSystem kicked_harper_system(const HarperParams& p) {
  validate(p);
  HermitianOperator h0(chain(Eigen::VectorXd::Zero(p.length),
                             Eigen::VectorXd::Constant(p.length, p.alpha), p.boundary));
  HermitianOperator v = HermitianOperator::diagonal(p.alpha * p.onsite * cosines(p));
  return KickedSystem(std::move(h0), std::move(v), p.period);
}

HermitianOperator kicked_harper_effective(const HarperParams& p, KickedMode mode) {
  validate(p);
  switch (mode) {
    case KickedMode::ClosedForm: {
      const Eigen::VectorXd c = cosines(p);
      const double strength = 0.25 * p.onsite * p.onsite / 6.0;
      Eigen::VectorXd bonds = Eigen::VectorXd::Ones(p.length);
      for (Index b = 0; b < p.length; ++b) bonds[b] -= strength * c[b] * c[b];
      return HermitianOperator(chain(p.onsite * c, bonds, p.boundary));
    }
    case KickedMode::General: {
      if (p.alpha == 0.0 || !std::isfinite(p.alpha))
        throw DomainError("General kicked-Harper mode needs finite nonzero alpha");
      return (1.0 / p.alpha) * heff_delta_kicked(kicked_harper_system(p));
    }
  }
  throw ConfigError("unknown kicked-Harper mode");
}

DiscrepancyReport heff_discrepancy_report(const HarperParams& p) {
  const ComplexMatrix closed = kicked_harper_effective(p, KickedMode::ClosedForm).matrix();
  const ComplexMatrix general = kicked_harper_effective(p, KickedMode::General).matrix();
  DiscrepancyReport report;
  report.energy_scale = p.alpha;
  report.max_abs = max_abs(closed - general);
  const Index l = p.length;
  for (Index b = 0; b < bond_count(p); ++b) {
    const Index next = (b + 1) % l;
    BondDiscrepancy bond;
    bond.site = static_cast<int>(b + 1);
    bond.closed_form = closed(b, next).real();
    bond.general = general(b, next).real();
    bond.difference = bond.closed_form - bond.general;
    report.bonds.push_back(bond);
  }
  return report;
}

}  // namespace kickspec::harper
