#include "annulus/material.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace annulus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Horner evaluation of the k-th derivative of sum c_i d^i.
double poly_derivative(const std::vector<double>& c, int k, double d) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > static_cast<std::size_t>(k);) {
    double falling = 1.0;
    for (int j = 0; j < k; ++j) falling *= static_cast<double>(i - j);
    acc = acc * d + falling * c[i];
  }
  return acc;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

StoredEnergy StoredEnergy::quadratic(double a, double b, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw InvalidArgument("quadratic stored energy needs kappa > 0");
  StoredEnergy e;
  e.kind_ = EnergyKind::quadratic;
  e.params_ = {a, b, kappa};
  const double k2 = kappa * kappa;
  e.eval_.phi = [=](double d) { return a + b * d + k2 * d * d; };
  e.eval_.dphi = [=](double d) { return b + 2.0 * k2 * d; };
  e.eval_.ddphi = [=](double) { return 2.0 * k2; };
  e.eval_.d3phi = [](double) { return 0.0; };
  e.name_ = "quad:a=" + format_real(a) + ",b=" + format_real(b) + ",kappa=" + format_real(kappa);
  e.finish();
  return e;
}

StoredEnergy StoredEnergy::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty())
    throw InvalidArgument("polynomial stored energy needs coefficients");
  StoredEnergy e;
  e.kind_ = EnergyKind::polynomial;
  e.params_ = std::move(coefficients);
  const auto c = e.params_;
  e.eval_.phi = [c](double d) { return poly_derivative(c, 0, d); };
  e.eval_.dphi = [c](double d) { return poly_derivative(c, 1, d); };
  e.eval_.ddphi = [c](double d) { return poly_derivative(c, 2, d); };
  e.eval_.d3phi = [c](double d) { return poly_derivative(c, 3, d); };
  e.name_ = "poly:";
  for (std::size_t i = 0; i < c.size(); ++i) e.name_ += (i ? "," : "") + format_real(c[i]);
  e.finish();
  return e;
}

StoredEnergy StoredEnergy::xlogx(double c) {
  // d log d - d + 1 vanishes at d = 1, so positivity needs c > 0.
  if (!(c > 0.0) || !std::isfinite(c))
    throw InvalidArgument("xlogx stored energy needs c > 0");
  StoredEnergy e;
  e.kind_ = EnergyKind::xlogx;
  e.params_ = {c};
  e.eval_.phi = [c](double d) {
    return (d > 0.0 ? d * std::log(d) : 0.0) - d + 1.0 + c;
  };
  e.eval_.dphi = [](double d) { return std::log(d); };
  e.eval_.ddphi = [](double d) { return d > 0.0 ? 1.0 / d : kInf; };
  e.eval_.d3phi = [](double d) { return d > 0.0 ? -1.0 / (d * d) : -kInf; };
  e.eval_.ddphi_infinite_at_zero = true;
  e.name_ = "xlogx:c=" + format_real(c);
  e.finish();
  return e;
}

StoredEnergy StoredEnergy::custom(std::string name, EnergyEvaluators evaluators) {
  if (!evaluators.phi || !evaluators.dphi || !evaluators.ddphi)
    throw InvalidArgument("custom stored energy needs phi, dphi and ddphi");
  StoredEnergy e;
  e.kind_ = EnergyKind::custom;
  e.name_ = std::move(name);
  e.eval_ = std::move(evaluators);
  e.finish();
  return e;
}

void StoredEnergy::finish() {
  singular_at_zero_ = eval_.ddphi_infinite_at_zero;
  alpha_ = singular_at_zero_ ? 0.0 : chi(0.0);
}

double StoredEnergy::phi(double d) const { return eval_.phi(d); }
double StoredEnergy::dphi(double d) const { return eval_.dphi(d); }

double StoredEnergy::ddphi(double d) const {
  if (d == 0.0 && singular_at_zero_) return kInf;
  return eval_.ddphi(d);
}

double StoredEnergy::d3phi(double d) const {
  if (eval_.d3phi) return eval_.d3phi(d);
  const double h = 1e-5 * std::max(1.0, std::abs(d));
  const double lo = std::max(0.0, d - h);
  return (eval_.ddphi(d + h) - eval_.ddphi(lo)) / (d + h - lo);
}

double StoredEnergy::chi(double d) const {
  const double dd = ddphi(d);
  if (std::isinf(dd)) return 0.0;
  if (dd == 0.0) return kInf;
  return 1.0 / dd;
}

StoredEnergy make_quadratic(double a, double b, double kappa) {
  auto e = StoredEnergy::quadratic(a, b, kappa);
  for (double d : log_grid()) {
    if (!(e.phi(d) > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "quadratic stored energy is not positive at d = " << d
         << " (Phi = " << e.phi(d) << ")";
      throw InvalidArgument(os.str());
    }
  }
  return e;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw InvalidArgument("log_grid needs 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) /
                            static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

ValidationReport validate_energy(const StoredEnergy& phi,
                                 std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("validation grid is empty");
  ValidationReport r;
  for (double d : grid) {
    if (!(d >= 0.0)) throw InvalidArgument("validation grid needs d >= 0");
    if (d > 0.0) {
      const double v = phi.phi(d);
      if (!(v > 0.0)) r.positivity.push_back({d, v});
    }
    const double c = phi.ddphi(d);
    if (!(c >= 0.0)) r.convexity.push_back({d, c});
  }

  r.alpha = phi.alpha();
  r.chi_finite_at_zero = std::isfinite(r.alpha);
  if (phi.ddphi_infinite_at_zero()) {
    // chi'(0) as a limit from the right.
    const double d = 1e-12;
    const double dd = phi.ddphi(d);
    r.chi_prime_finite_at_zero = std::isfinite(-phi.d3phi(d) / (dd * dd));
  } else if (r.chi_finite_at_zero) {
    const double dd = phi.ddphi(0.0);
    r.chi_prime_finite_at_zero = std::isfinite(-phi.d3phi(0.0) / (dd * dd));
  } else {
    r.chi_prime_finite_at_zero = false;
  }
  return r;
}

ValidationReport validate_energy(const StoredEnergy& phi) {
  const auto g = log_grid();
  return validate_energy(phi, g);
}

}  // namespace annulus
