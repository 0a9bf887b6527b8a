#pragma once

#include <span>
#include <vector>

#include "annulus/material.hpp"
#include "annulus/solver_config.hpp"

namespace annulus {

inline constexpr double kOrderingTolerance = 1e-8;

/// Nodewise check of H1 <= H2 for two planar profiles.
struct ComparisonReport {
  std::vector<double> t;
  std::vector<double> H1;
  std::vector<double> H2;
  /// max_i (H1_i - H2_i); nonpositive when the ordering holds exactly.
  double max_violation = 0.0;
  bool pass = false;
};

class ComparisonPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integrates the planar equation for (phi1, lambda1) and (phi2, lambda2) on
/// [1, R] and reports whether H1 <= H2. Requires phi1'' >= phi2'' on the
/// validation grid and 0 < lambda1 <= lambda2.
ComparisonReport ordering_check(const StoredEnergy& phi1, const StoredEnergy& phi2,
                                double lambda1, double lambda2, double R,
                                const SolverConfig& config = {});

enum class Verdict { holds, fails, undefined };

struct AdmissibilityVerdict {
  Verdict verdict = Verdict::undefined;
  double sup_ddphi = 0.0;
  double kappa = 0.0;
  double margin = 0.0;
};

std::string_view to_string(Verdict v);

/// Necessary condition for an increasing planar solution: with 2 kappa^2 the
/// supremum of Phi'' over `grid`, (kappa, R, R*) must be admissible.
AdmissibilityVerdict sup_kappa_admissibility(const StoredEnergy& phi, double R,
                                             double R_star, std::span<const double> grid);

}  // namespace annulus
