#include "annulus/comparison.hpp"

#include <cmath>
#include <sstream>

#include "annulus/quadratic.hpp"
#include "annulus/solver.hpp"

namespace annulus {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::undefined: return "undefined";
  }
  return "undefined";
}

ComparisonReport ordering_check(const StoredEnergy& phi1, const StoredEnergy& phi2,
                                double lambda1, double lambda2, double R,
                                const SolverConfig& config) {
  if (!validate_energy(phi1).passed() || !validate_energy(phi2).passed())
    throw ComparisonPrecondition("ordering_check: stored energy fails validation");
  for (double d : log_grid()) {
    if (phi1.ddphi(d) < phi2.ddphi(d)) {
      std::ostringstream os;
      os.precision(17);
      os << "ordering_check: Phi1'' < Phi2'' at d = " << d;
      throw ComparisonPrecondition(os.str());
    }
  }
  if (!(lambda1 > 0.0) || !(lambda1 <= lambda2))
    throw ComparisonPrecondition("ordering_check needs 0 < lambda1 <= lambda2");

  const auto a = integrate_profile(2, phi1, lambda1, R, config, ElForm::planar_direct);
  const auto b = integrate_profile(2, phi2, lambda2, R, config, ElForm::planar_direct);
  ComparisonReport r;
  r.t = a.profile.t;
  r.H1 = a.profile.H;
  r.H2 = b.profile.H;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.t.size(); ++i)
    r.max_violation = std::max(r.max_violation, r.H1[i] - r.H2[i]);
  r.pass = r.max_violation <= kOrderingTolerance;
  return r;
}

AdmissibilityVerdict sup_kappa_admissibility(const StoredEnergy& phi, double R,
                                             double R_star, std::span<const double> grid) {
  AdmissibilityVerdict v;
  double sup = 0.0;
  for (double d : grid) {
    const double dd = phi.ddphi(d);
    if (!std::isfinite(dd)) {
      v.sup_ddphi = dd;
      return v;
    }
    sup = std::max(sup, dd);
  }
  v.sup_ddphi = sup;
  if (!(sup > 0.0)) return v;
  v.kappa = std::sqrt(0.5 * sup);
  v.margin = quadratic::admissibility_margin(v.kappa, R, R_star);
  v.verdict = v.margin >= 0.0 ? Verdict::holds : Verdict::fails;
  return v;
}

}  // namespace annulus
