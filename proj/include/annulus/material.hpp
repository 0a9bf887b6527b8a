#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace annulus {

/// Raised for parameters that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EnergyKind { quadratic, polynomial, xlogx, custom };

/// Evaluator bundle for user supplied stored energies.
///
/// `d3phi` is optional and only used by validation (for chi'(0)).
/// When `ddphi_infinite_at_zero` is set, alpha = chi(0) is taken to be 0
/// without evaluating the second derivative at the origin.
struct EnergyEvaluators {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> ddphi;
  std::function<double(double)> d3phi;
  bool ddphi_infinite_at_zero = false;
};

/// Stored energy Phi(d) of the Jacobian determinant d >= 0.
///
/// Immutable after construction; copies share the evaluator bundle.
class StoredEnergy {
 public:
  static StoredEnergy quadratic(double a, double b, double kappa);
  static StoredEnergy polynomial(std::vector<double> coefficients);
  /// Phi(d) = d ln d - d + 1 + c. Phi'' = 1/d, so alpha = 0.
  static StoredEnergy xlogx(double c);
  static StoredEnergy custom(std::string name, EnergyEvaluators evaluators);

  EnergyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double phi(double d) const;
  double dphi(double d) const;
  double ddphi(double d) const;
  double d3phi(double d) const;
  /// 1 / Phi''(d); 0 where Phi'' is infinite.
  double chi(double d) const;
  /// chi(0), the reciprocal stiffness at zero volume.
  double alpha() const { return alpha_; }
  bool ddphi_infinite_at_zero() const { return singular_at_zero_; }

  /// Quadratic parameters (a, b, kappa); only meaningful for kind() == quadratic.
  double a() const { return params_.at(0); }
  double b() const { return params_.at(1); }
  double kappa() const { return params_.at(2); }
  /// Polynomial coefficients c0, c1, ... or the single parameter of xlogx.
  const std::vector<double>& parameters() const { return params_; }

 private:
  StoredEnergy() = default;
  void finish();

  EnergyKind kind_ = EnergyKind::custom;
  std::string name_;
  std::vector<double> params_;
  EnergyEvaluators eval_;
  bool singular_at_zero_ = false;
  double alpha_ = 0.0;
};

/// Checked constructor: rejects kappa <= 0 and Phi <= 0 on the default grid.
/// Shortest decimal string that parses back to exactly x.
std::string format_real(double x);

StoredEnergy make_quadratic(double a, double b, double kappa);

struct GridViolation {
  double d;
  double value;
};

struct ValidationReport {
  std::vector<GridViolation> positivity;  // Phi(d) <= 0 at d > 0
  std::vector<GridViolation> convexity;   // Phi''(d) < 0
  bool chi_finite_at_zero = true;
  bool chi_prime_finite_at_zero = true;
  double alpha = 0.0;

  bool passed() const {
    return positivity.empty() && convexity.empty() && chi_finite_at_zero &&
           chi_prime_finite_at_zero;
  }
};

/// Log-spaced grid on [lo, hi]; 256 points on [1e-6, 1e6] by default.
std::vector<double> log_grid(double lo = 1e-6, double hi = 1e6,
                             std::size_t count = 256);

ValidationReport validate_energy(const StoredEnergy& phi,
                                 std::span<const double> grid);
ValidationReport validate_energy(const StoredEnergy& phi);

}  // namespace annulus
