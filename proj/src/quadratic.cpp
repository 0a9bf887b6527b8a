#include "annulus/quadratic.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>

namespace annulus::quadratic {

void QuadraticCase::validate() const {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (!(R > 1.0)) throw InvalidArgument("R must exceed 1");
  if (R_star && !(*R_star > 1.0)) throw InvalidArgument("R* must exceed 1");
}

double psi(double kappa, double x) {
  const double kx = kappa * x;
  return kx * std::sqrt(1.0 + kx * kx) + std::asinh(kx);
}

double psi_prime(double kappa, double x) {
  const double kx = kappa * x;
  return 2.0 * kappa * std::sqrt(1.0 + kx * kx);
}

double psi_inv(double kappa, double y) {
  if (!(y >= 0.0)) throw InvalidArgument("psi_inv needs y >= 0");
  if (y == 0.0) return 0.0;
  // psi(x) >= 2 kappa x and psi(x) >= kappa^2 x^2 give two upper brackets.
  const double hi = std::min(y / (2.0 * kappa), std::sqrt(y) / kappa);
  const double guess = hi;
  std::uintmax_t iters = 200;
  return boost::math::tools::newton_raphson_iterate(
      [&](double x) { return std::make_pair(psi(kappa, x) - y, psi_prime(kappa, x)); },
      guess, 0.0, hi, 52, iters);
}

double c0(const QuadraticCase& c) {
  c.validate();
  const double R2 = c.R * c.R;
  return (R2 * psi(c.kappa, c.a_ratio()) - psi(c.kappa, 1.0)) / (R2 - 1.0);
}

double c0_from_lambda(double kappa, double lambda) {
  return std::asinh(kappa) + lambda * kappa * std::sqrt(1.0 + kappa * kappa);
}

double lambda_from_c0(double kappa, double c0v) {
  return (c0v - std::asinh(kappa)) / (kappa * std::sqrt(1.0 + kappa * kappa));
}

double implied_lambda(const QuadraticCase& c) { return lambda_from_c0(c.kappa, c0(c)); }

double aux_solution(double kappa, double c0v, double s) {
  const double ks = kappa * s;
  return s * (c0v - std::asinh(ks)) / (kappa * std::sqrt(1.0 + ks * ks));
}

double big_psi(const QuadraticCase& c, double t) {
  c.validate();
  const double R2 = c.R * c.R;
  const double t2 = t * t;
  return (R2 * psi(c.kappa, c.a_ratio()) * (t2 - 1.0) + psi(c.kappa, 1.0) * (R2 - t2)) /
         ((R2 - 1.0) * t2);
}

ProfilePoint closed_form_point(const QuadraticCase& c, double t) {
  const double s = psi_inv(c.kappa, big_psi(c, t));
  const double ks = c.kappa * s;
  const double Hdot = (c0(c) - std::asinh(ks)) / (c.kappa * std::sqrt(1.0 + ks * ks));
  return {t * s, Hdot};
}

RadialProfile closed_form_profile(const QuadraticCase& c, std::span<const double> nodes) {
  c.validate();
  if (!c.R_star) throw InvalidArgument("closed_form_profile needs R*");
  if (!admissible(c.kappa, c.R, *c.R_star))
    throw InvalidArgument("closed_form_profile: (kappa, R, R*) is not admissible");
  const QuadraticCase copy = c;
  return sample_profile(nodes, [copy](double t) { return closed_form_point(copy, t); });
}

double admissibility_margin(double kappa, double R, double R_star) {
  const double a = R_star / R;
  const double lhs = a * std::sqrt(1.0 + kappa * kappa * a * a) -
                     std::sqrt(1.0 + kappa * kappa) / (R * R);
  const double rhs = (std::asinh(kappa) - std::asinh(kappa * a)) / kappa;
  return lhs - rhs;
}

bool admissible(double kappa, double R, double R_star) {
  return admissibility_margin(kappa, R, R_star) >= 0.0;
}

double nitsche_bound(double kappa, double R) {
  if (!(kappa > 0.0) || !(R > 1.0)) throw InvalidArgument("nitsche_bound needs kappa > 0, R > 1");
  std::uintmax_t iters = 400;
  const auto root = boost::math::tools::bisect(
      [&](double r) { return admissibility_margin(kappa, R, r); }, 1.0, R,
      [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::abs(b); }, iters);
  return 0.5 * (root.first + root.second);
}

double nitsche_limit_small_kappa(double R) { return (1.0 + R * R) / (2.0 * R); }

}  // namespace annulus::quadratic
