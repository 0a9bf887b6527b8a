#include "annulus/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace annulus {

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) ||
      !(root_tol > 0.0))
    throw InvalidArgument("solver tolerances must be positive");
  if (!(lambda_lo >= 0.0) || !(lambda_hi > lambda_lo))
    throw InvalidArgument("lambda bracket must satisfy 0 <= lo < hi");
  if (max_iters <= 0) throw InvalidArgument("max_iters must be positive");
  if (profile_nodes < 5) throw InvalidArgument("profile_nodes must be >= 5");
}

void AnnulusProblem::validate() const {
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (!(R > 1.0)) throw InvalidArgument("outer radius R must exceed 1");
  if (R_star && !(*R_star > 1.0))
    throw InvalidArgument("outer target radius R* must exceed 1");
  config.validate();
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::inelastic: return "inelastic";
    case Regime::conformal: return "conformal";
    case Regime::elastic: return "elastic";
    case Regime::mixed: return "mixed";
  }
  return "mixed";
}

ProfilePoint RadialProfile::at(double tt) const {
  if (dense) return dense(tt);
  if (t.size() < 2) throw InvalidArgument("profile needs at least two nodes");
  auto it = std::upper_bound(t.begin(), t.end(), tt);
  std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  i = std::min(i, t.size() - 2);
  const double h = t[i + 1] - t[i];
  const double x = (tt - t[i]) / h;
  const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
  const double h10 = x * (1 - x) * (1 - x);
  const double h01 = x * x * (3 - 2 * x);
  const double h11 = x * x * (x - 1);
  const double H_ = h00 * H[i] + h10 * h * Hdot[i] + h01 * H[i + 1] + h11 * h * Hdot[i + 1];
  const double d00 = 6 * x * x - 6 * x;
  const double d10 = 3 * x * x - 4 * x + 1;
  const double d01 = -d00;
  const double d11 = 3 * x * x - 2 * x;
  const double Hd = (d00 * H[i] + d01 * H[i + 1]) / h + d10 * Hdot[i] + d11 * Hdot[i + 1];
  return {H_, Hd};
}

double sphere_measure(int n) {
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double frobenius_sq(int n, double t, double H, double Hdot) {
  if (!(t > 0.0)) throw InvalidArgument("frobenius_sq needs t > 0");
  return (n - 1) * H * H / (t * t) + Hdot * Hdot;
}

double jacobian(int n, double t, double H, double Hdot) {
  if (!(t > 0.0)) throw InvalidArgument("jacobian needs t > 0");
  return Hdot * std::pow(H / t, n - 1);
}

double lagrangian_density(int n, const StoredEnergy& phi, double t, double H,
                          double Hdot) {
  if (!(t > 0.0) || !(H > 0.0))
    throw InvalidArgument("lagrangian_density needs t > 0 and H > 0");
  const double J = jacobian(n, t, H, Hdot);
  if (J < 0.0)
    throw InvalidArgument("lagrangian_density: negative Jacobian, Phi undefined");
  const double a = frobenius_sq(n, t, H, Hdot);
  return std::pow(t, n - 1) * (std::pow(a, 0.5 * n) + phi.phi(J));
}

double lagrangian_density(const AnnulusProblem& problem, double t, double H,
                          double Hdot) {
  return lagrangian_density(problem.n, problem.phi, t, H, Hdot);
}

DensityGradient lagrangian_gradient(int n, const StoredEnergy& phi, double t,
                                    double H, double Hdot) {
  if (!(t > 0.0) || !(H > 0.0))
    throw InvalidArgument("lagrangian_gradient needs t > 0 and H > 0");
  const double p = std::pow(t, n - 1);
  const double a = frobenius_sq(n, t, H, Hdot);
  const double an2m1 = std::pow(a, 0.5 * n - 1.0);
  const double Hn2 = std::pow(H, n - 2);
  const double J = Hdot * Hn2 * H / p;
  const double dphi = phi.dphi(J);
  DensityGradient g;
  g.value = p * (an2m1 * a + phi.phi(J));
  g.dH = p * n * (n - 1) * an2m1 * H / (t * t) + dphi * (n - 1) * Hdot * Hn2;
  g.dHdot = p * n * an2m1 * Hdot + dphi * Hn2 * H;
  return g;
}

double lagrangian_kk(int n, const StoredEnergy& phi, double t, double H,
                     double Hdot) {
  const double a = frobenius_sq(n, t, H, Hdot);
  const double q = (n - 1) * H * H + t * t * Hdot * Hdot;
  const double distortion = (n - 1) * n * std::pow(t, n + 1) * std::pow(a, 0.5 * n) *
                            (H * H + t * t * Hdot * Hdot) / (q * q);
  const double J = jacobian(n, t, H, Hdot);
  const double volumetric =
      std::pow(H, 2 * n - 2) * std::pow(t, 1 - n) * phi.ddphi(J);
  return distortion + volumetric;
}

Regime classify_regime(const RadialProfile& profile) {
  const auto& t = profile.t;
  if (t.size() < 2) throw InvalidArgument("classify_regime needs >= 2 nodes");
  bool all_conformal = true, all_below = true, all_above = true;
  // Interior nodes; two-node profiles fall back to the endpoints.
  const std::size_t lo = t.size() > 2 ? 1 : 0;
  const std::size_t hi = t.size() > 2 ? t.size() - 1 : t.size();
  for (std::size_t i = lo; i < hi; ++i) {
    const double mu = elasticity(t[i], profile.H[i], profile.Hdot[i]);
    all_conformal = all_conformal && std::abs(mu - 1.0) <= kConformalTolerance;
    all_below = all_below && mu < 1.0;
    all_above = all_above && mu > 1.0;
  }
  if (all_conformal) return Regime::conformal;
  if (all_below) return Regime::inelastic;
  if (all_above) return Regime::elastic;
  return Regime::mixed;
}

std::pair<double, double> normalize(double r, double R_raw, double r_star,
                                    double R_star_raw) {
  if (!(r > 0.0) || !(R_raw > r) || !(r_star > 0.0) || !(R_star_raw > r_star))
    throw InvalidArgument("normalize needs 0 < r < R and 0 < r* < R*");
  return {R_raw / r, R_star_raw / r_star};
}

RadialProfile sample_profile(std::span<const double> nodes,
                             const ProfileEvaluator& f) {
  RadialProfile p;
  p.t.assign(nodes.begin(), nodes.end());
  p.H.reserve(nodes.size());
  p.Hdot.reserve(nodes.size());
  for (double t : nodes) {
    const auto pt = f(t);
    p.H.push_back(pt.H);
    p.Hdot.push_back(pt.Hdot);
  }
  p.dense = f;
  if (p.size() >= 2) p.regime = classify_regime(p);
  return p;
}

std::vector<double> uniform_nodes(double a, double b, std::size_t count) {
  if (count < 2) throw InvalidArgument("uniform_nodes needs count >= 2");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  t.back() = b;
  return t;
}

}  // namespace annulus
