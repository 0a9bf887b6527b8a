#pragma once

#include <atomic>
#include <memory>
#include <variant>

#include "annulus/energy.hpp"
#include "annulus/euler_lagrange.hpp"
#include "annulus/kinematics.hpp"
#include "annulus/ode.hpp"

namespace annulus {

class MonotonicityLoss : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class GrowthBoundViolation : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

 private:
  double lo_, hi_;
};

/// Process-wide tally of growth-bound checks made at accepted steps.
struct GrowthBoundTally {
  std::size_t checks;
  std::size_t violations;
};
GrowthBoundTally growth_bound_tally();

/// Solution v(s) of the auxiliary equation with v(1) = lambda.
struct AuxTrajectory {
  std::vector<double> s;
  std::vector<double> v;
  double lambda = 0.0;
  std::shared_ptr<const OdeSolution<1>> dense;

  double s_begin() const { return s.front(); }
  double s_end() const { return s.back(); }
  double operator()(double ss) const { return (*dense)(ss)[0]; }
};

AuxTrajectory integrate_aux(int n, const StoredEnergy& phi, double lambda,
                            double s_target, const SolverConfig& config);

struct ProfileRun {
  RadialProfile profile;
  /// H(R) as integrated, and the accumulated local error estimate on it.
  double outer_image = 0.0;
  double outer_image_error = 0.0;
  OdeStats<2> stats;
};

/// Integrates Hddot = el_rhs(form, ...) from H(1) = 1, Hdot(1) = lambda to t = R.
ProfileRun integrate_profile(int n, const StoredEnergy& phi, double lambda, double R,
                             const SolverConfig& config, ElForm form = ElForm::reduced);

/// P(lambda) = H_lambda(R).
double outer_radius_map(int n, const StoredEnergy& phi, double R, double lambda,
                        const SolverConfig& config);

/// H_0(R), the outer image of the lambda = 0 solution; 1 when alpha = 0.
double critical_radius(int n, const StoredEnergy& phi, double R,
                       const SolverConfig& config);

struct ShootingOutcome {
  double lambda = 0.0;
  RadialProfile profile;
  double outer_image = 0.0;
  double outer_image_error = 0.0;
  double r_circ = 0.0;
  EnergyBreakdown energy;
  int iterations = 0;
};

struct NoSolution {
  double r_circ = 0.0;
};

using BvpResult = std::variant<ShootingOutcome, NoSolution>;

BvpResult solve_bvp(const AnnulusProblem& problem);

}  // namespace annulus
