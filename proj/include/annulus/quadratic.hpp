#pragma once

#include <optional>
#include <span>

#include "annulus/kinematics.hpp"

namespace annulus::quadratic {

/// Planar problem with Phi(d) = a + b d + kappa^2 d^2. Only kappa enters the
/// Euler-Lagrange equation, so a and b are not carried here.
struct QuadraticCase {
  double kappa = 1.0;
  double R = 2.0;
  std::optional<double> R_star;

  void validate() const;
  double a_ratio() const { return R_star.value() / R; }
};

/// psi(x) = kappa x sqrt(1 + kappa^2 x^2) + asinh(kappa x); strictly increasing.
double psi(double kappa, double x);
double psi_prime(double kappa, double x);
/// Inverse of psi by bracketed Newton iteration.
double psi_inv(double kappa, double y);

/// Integration constant of the auxiliary solution fixed by H(1) = 1, H(R) = R*.
double c0(const QuadraticCase& c);
/// c0 for the auxiliary solution with v(1) = lambda, and its inverse.
double c0_from_lambda(double kappa, double lambda);
double lambda_from_c0(double kappa, double c0);
/// The shooting slope Hdot(1) of the closed-form solution.
double implied_lambda(const QuadraticCase& c);

/// v(s) = s (c0 - asinh(kappa s)) / (kappa sqrt(1 + kappa^2 s^2)).
double aux_solution(double kappa, double c0, double s);

/// Psi(t) with psi(H(t)/t) = Psi(t) along the solution.
double big_psi(const QuadraticCase& c, double t);

/// H(t) = t psi^{-1}(Psi(t)) with Hdot from the auxiliary solution.
ProfilePoint closed_form_point(const QuadraticCase& c, double t);
RadialProfile closed_form_profile(const QuadraticCase& c, std::span<const double> nodes);

/// Left side minus right side of the admissibility inequality; >= 0 iff admissible.
double admissibility_margin(double kappa, double R, double R_star);
bool admissible(double kappa, double R, double R_star);

/// Critical radius R_o(R, kappa), the root of the admissibility equality in (1, R).
double nitsche_bound(double kappa, double R);

/// kappa -> 0 limit of nitsche_bound: (1 + R^2) / (2R).
double nitsche_limit_small_kappa(double R);

}  // namespace annulus::quadratic
