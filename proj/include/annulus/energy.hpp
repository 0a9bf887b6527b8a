#pragma once

#include <span>
#include <vector>

#include "annulus/kinematics.hpp"
#include "annulus/material.hpp"

namespace annulus {

/// Energy of a radial map. `distortion`, `volumetric` and `total` are per
/// unit sphere; `total_absolute` includes the sphere measure.
struct EnergyBreakdown {
  double distortion = 0.0;
  double volumetric = 0.0;
  double total = 0.0;
  double total_absolute = 0.0;
  double error_estimate = 0.0;
};

inline constexpr double kEnergyRelTol = 1e-10;

EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const ProfileEvaluator& f,
                             double t0, double t1);
EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const RadialProfile& profile);
EnergyBreakdown total_energy(const AnnulusProblem& problem, const RadialProfile& profile);

struct ConvexityReport {
  std::vector<double> K;
  std::vector<double> second_difference;
  /// Closed-form second derivative at the same points.
  std::vector<double> analytic;
  bool all_positive = true;
};

ConvexityReport convexity_in_K(int n, const StoredEnergy& phi, double t, double H,
                               std::span<const double> K_grid);

struct ProfileSample {
  double t;
  double H;
  double Hdot;
};

/// Largest C with C |Hdot|^n <= density over the sample (samples with Hdot = 0 skipped).
double coercivity_constant(int n, const StoredEnergy& phi,
                           std::span<const ProfileSample> sample);

/// Composite-trapezoid energy of the piecewise-linear map through (t_i, H_i).
class DiscreteEnergy {
 public:
  DiscreteEnergy(int n, StoredEnergy phi, double R, double R_star, std::size_t interior);

  std::size_t dimension() const { return t_.size() - 1; }
  const std::vector<double>& nodes() const { return t_; }

  /// Node values for log-increment coordinates y (size dimension()).
  std::vector<double> heights(std::span<const double> y) const;
  double energy(std::span<const double> y) const;
  /// Energy and gradient with respect to y.
  double energy(std::span<const double> y, std::span<double> grad) const;

 private:
  std::vector<double> increments(std::span<const double> y) const;

  int n_;
  StoredEnergy phi_;
  double R_star_;
  std::vector<double> t_;
};

struct MinimizerOptions {
  double grad_tol = 1e-9;
  int max_iters = 50000;
  int memory = 12;
  bool throw_on_cap = true;
};

struct MinimizerResult {
  RadialProfile profile;
  std::vector<double> y;
  double energy = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// (H_1 - H_0) / h; tends to 0 when R* falls below the critical radius.
  double boundary_slope = 0.0;
};

class MinimizerCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MinimizerResult discrete_minimizer(int n, const StoredEnergy& phi, double R,
                                   double R_star, std::size_t interior,
                                   const MinimizerOptions& options = {});

}  // namespace annulus
