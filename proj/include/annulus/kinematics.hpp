#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "annulus/material.hpp"
#include "annulus/solver_config.hpp"

namespace annulus {

/// Normalized annulus problem A(1, R) -> A(1, R*) in R^n.
struct AnnulusProblem {
  int n = 2;
  double R = 2.0;
  std::optional<double> R_star;
  StoredEnergy phi = StoredEnergy::quadratic(0.0, 0.0, 1.0);
  SolverConfig config;

  void validate() const;
};

enum class Regime { inelastic, conformal, elastic, mixed };

std::string_view to_string(Regime r);

struct ProfilePoint {
  double H;
  double Hdot;
};

/// Continuous evaluation t -> (H, Hdot), typically an integrator's dense output.
using ProfileEvaluator = std::function<ProfilePoint(double)>;

/// Sampled radial profile t -> (H, Hdot) on [1, R].
struct RadialProfile {
  std::vector<double> t;
  std::vector<double> H;
  std::vector<double> Hdot;
  Regime regime = Regime::mixed;
  /// Optional continuous representation; empty for purely sampled profiles.
  ProfileEvaluator dense;

  std::size_t size() const { return t.size(); }
  double t_min() const { return t.front(); }
  double t_max() const { return t.back(); }
  /// Dense evaluation if available, otherwise cubic Hermite on the nodes.
  ProfilePoint at(double tt) const;
};

/// Surface measure of the unit sphere S^{n-1}.
double sphere_measure(int n);

/// ||Dh||^2 = (n-1) H^2 / t^2 + Hdot^2 for h(x) = H(|x|) x/|x|.
double frobenius_sq(int n, double t, double H, double Hdot);

/// det Dh = Hdot (H/t)^{n-1}.
double jacobian(int n, double t, double H, double Hdot);

/// t^{n-1} (||Dh||^n + Phi(J)), the radial energy density per unit sphere.
double lagrangian_density(int n, const StoredEnergy& phi, double t, double H,
                          double Hdot);
double lagrangian_density(const AnnulusProblem& problem, double t, double H,
                          double Hdot);

/// Analytic partial derivatives of the density, used by the discrete oracle.
struct DensityGradient {
  double value;
  double dH;
  double dHdot;
};
DensityGradient lagrangian_gradient(int n, const StoredEnergy& phi, double t,
                                    double H, double Hdot);

/// Closed form of d^2/dHdot^2 of the density; positive for convex Phi.
double lagrangian_kk(int n, const StoredEnergy& phi, double t, double H,
                     double Hdot);

/// Elasticity function t Hdot / H.
inline double elasticity(double t, double H, double Hdot) { return t * Hdot / H; }

inline constexpr double kConformalTolerance = 1e-9;

Regime classify_regime(const RadialProfile& profile);

/// Scale A(r, R) -> A(r*, R*) to the unit-inner-radius form.
std::pair<double, double> normalize(double r, double R_raw, double r_star,
                                    double R_star_raw);

/// Profile built from a closed-form map, sampled at `nodes`.
RadialProfile sample_profile(std::span<const double> nodes,
                             const ProfileEvaluator& f);

/// Uniform nodes on [a, b], endpoints included.
std::vector<double> uniform_nodes(double a, double b, std::size_t count);

}  // namespace annulus
