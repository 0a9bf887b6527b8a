#include "annulus/energy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace annulus {

namespace {

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Integral integrate_piece(F&& f, double a, double b) {
  // The Kronrod error estimate bottoms out near 1e-12 relative; asking for
  // less only exhausts the recursion depth.
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 10, 1e-11, &err);
  return {v, err};
}

double inf_norm(std::span<const double> g) {
  double m = 0.0;
  for (double x : g) m = std::max(m, std::abs(x));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const ProfileEvaluator& f,
                             double t0, double t1, std::span<const double> breaks);

EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const ProfileEvaluator& f,
                             double t0, double t1) {
  const std::vector<double> breaks = uniform_nodes(t0, t1, 65);
  return total_energy(n, phi, f, t0, t1, breaks);
}

EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const ProfileEvaluator& f,
                             double t0, double t1, std::span<const double> breaks) {
  if (!(t1 > t0)) throw InvalidArgument("total_energy needs t0 < t1");
  auto distortion = [&](double t) {
    const auto p = f(t);
    return std::pow(t, n - 1) * std::pow(frobenius_sq(n, t, p.H, p.Hdot), 0.5 * n);
  };
  auto volumetric = [&](double t) {
    const auto p = f(t);
    const double J = jacobian(n, t, p.H, p.Hdot);
    if (J < 0.0) throw InvalidArgument("total_energy: negative Jacobian, Phi undefined");
    return std::pow(t, n - 1) * phi.phi(J);
  };
  Integral d, v;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto di = integrate_piece(distortion, breaks[i], breaks[i + 1]);
    const auto vi = integrate_piece(volumetric, breaks[i], breaks[i + 1]);
    d.value += di.value;
    d.error += di.error;
    v.value += vi.value;
    v.error += vi.error;
  }
  EnergyBreakdown e;
  e.distortion = d.value;
  e.volumetric = v.value;
  e.total = d.value + v.value;
  e.total_absolute = sphere_measure(n) * e.total;
  e.error_estimate = std::max(d.error + v.error, kEnergyRelTol * std::abs(e.total));
  return e;
}

EnergyBreakdown total_energy(int n, const StoredEnergy& phi, const RadialProfile& profile) {
  if (profile.size() < 2) throw InvalidArgument("total_energy needs a profile with >= 2 nodes");
  return total_energy(n, phi, [&](double t) { return profile.at(t); }, profile.t_min(),
                      profile.t_max(), profile.t);
}

EnergyBreakdown total_energy(const AnnulusProblem& problem, const RadialProfile& profile) {
  return total_energy(problem.n, problem.phi, profile);
}

ConvexityReport convexity_in_K(int n, const StoredEnergy& phi, double t, double H,
                               std::span<const double> K_grid) {
  ConvexityReport r;
  for (double K : K_grid) {
    if (!(K > 0.0)) throw InvalidArgument("convexity_in_K needs K > 0");
    // Any secant second difference of a convex function is nonnegative, so
    // the step only needs to keep K - h > 0.
    const double h = std::min(1e-3 * std::max(K, 1.0), 0.5 * K);
    const double f0 = lagrangian_density(n, phi, t, H, K);
    const double fp = lagrangian_density(n, phi, t, H, K + h);
    const double fm = lagrangian_density(n, phi, t, H, K - h);
    const double sd = (fp - 2.0 * f0 + fm) / (h * h);
    r.K.push_back(K);
    r.second_difference.push_back(sd);
    r.analytic.push_back(lagrangian_kk(n, phi, t, H, K));
    r.all_positive = r.all_positive && sd > 0.0;
  }
  return r;
}

double coercivity_constant(int n, const StoredEnergy& phi,
                           std::span<const ProfileSample> sample) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& p : sample) {
    if (p.Hdot == 0.0) continue;
    const double L = lagrangian_density(n, phi, p.t, p.H, p.Hdot);
    c = std::min(c, L / std::pow(std::abs(p.Hdot), n));
  }
  return c;
}

DiscreteEnergy::DiscreteEnergy(int n, StoredEnergy phi, double R, double R_star,
                               std::size_t interior)
    : n_(n), phi_(std::move(phi)), R_star_(R_star) {
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (!(R > 1.0) || !(R_star > 1.0)) throw InvalidArgument("radii must exceed 1");
  t_ = uniform_nodes(1.0, R, interior + 2);
}

std::vector<double> DiscreteEnergy::increments(std::span<const double> y) const {
  const double ymax = *std::max_element(y.begin(), y.end());
  std::vector<double> d(y.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += d[i] = std::exp(y[i] - ymax);
  const double scale = (R_star_ - 1.0) / sum;
  for (double& x : d) x *= scale;
  return d;
}

std::vector<double> DiscreteEnergy::heights(std::span<const double> y) const {
  const auto d = increments(y);
  std::vector<double> H(t_.size());
  H[0] = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) H[i + 1] = H[i] + d[i];
  H.back() = R_star_;
  return H;
}

double DiscreteEnergy::energy(std::span<const double> y) const {
  const auto H = heights(y);
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < t_.size(); ++k) {
    const double h = t_[k + 1] - t_[k];
    const double K = (H[k + 1] - H[k]) / h;
    e += 0.5 * h *
         (lagrangian_density(n_, phi_, t_[k], H[k], K) +
          lagrangian_density(n_, phi_, t_[k + 1], H[k + 1], K));
  }
  return e;
}

double DiscreteEnergy::energy(std::span<const double> y, std::span<double> grad) const {
  const auto d = increments(y);
  const auto H = heights(y);
  const std::size_t m = t_.size();
  std::vector<double> gH(m, 0.0);
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double h = t_[k + 1] - t_[k];
    const double K = (H[k + 1] - H[k]) / h;
    const auto a = lagrangian_gradient(n_, phi_, t_[k], H[k], K);
    const auto b = lagrangian_gradient(n_, phi_, t_[k + 1], H[k + 1], K);
    e += 0.5 * h * (a.value + b.value);
    const double dK = 0.5 * (a.dHdot + b.dHdot);
    gH[k] += 0.5 * h * a.dH - dK;
    gH[k + 1] += 0.5 * h * b.dH + dK;
  }
  // dE/d(increment j) = sum_{i > j} dE/dH_i
  std::vector<double> gd(d.size());
  double tail = 0.0;
  for (std::size_t j = d.size(); j-- > 0;) {
    tail += gH[j + 1];
    gd[j] = tail;
  }
  const double mean = dot(gd, d) / (R_star_ - 1.0);
  for (std::size_t j = 0; j < d.size(); ++j) grad[j] = d[j] * (gd[j] - mean);
  return e;
}

MinimizerResult discrete_minimizer(int n, const StoredEnergy& phi, double R,
                                   double R_star, std::size_t interior,
                                   const MinimizerOptions& options) {
  if (interior < 16) throw InvalidArgument("discrete_minimizer needs >= 16 interior nodes");
  const DiscreteEnergy model(n, phi, R, R_star, interior);
  const std::size_t dim = model.dimension();

  std::vector<double> x(dim, 0.0), g(dim), xn(dim), gn(dim), p(dim);
  double f = model.energy(x, g);
  std::deque<std::vector<double>> S, Y;
  std::deque<double> rho;

  MinimizerResult res;
  int it = 0;
  for (; it < options.max_iters && inf_norm(g) > options.grad_tol; ++it) {
    // Two-loop recursion.
    for (std::size_t i = 0; i < dim; ++i) p[i] = -g[i];
    std::vector<double> alpha(S.size());
    for (std::size_t k = S.size(); k-- > 0;) {
      alpha[k] = rho[k] * dot(S[k], p);
      for (std::size_t i = 0; i < dim; ++i) p[i] -= alpha[k] * Y[k][i];
    }
    if (!S.empty()) {
      const double gamma = dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
      for (double& v : p) v *= gamma;
    }
    for (std::size_t k = 0; k < S.size(); ++k) {
      const double beta = rho[k] * dot(Y[k], p);
      for (std::size_t i = 0; i < dim; ++i) p[i] += (alpha[k] - beta) * S[k][i];
    }
    double gp = dot(g, p);
    if (!(gp < 0.0)) {
      S.clear(); Y.clear(); rho.clear();
      for (std::size_t i = 0; i < dim; ++i) p[i] = -g[i];
      gp = dot(g, p);
    }
    if (S.empty()) {
      // Keep the first step modest in the log coordinates.
      const double scale = std::min(1.0, 0.5 / std::max(inf_norm(p), 1e-300));
      for (double& v : p) v *= scale;
      gp = dot(g, p);
    }

    // Backtracking on the Armijo condition; near the round-off floor of the
    // energy, accept steps that cut the directional derivative instead.
    double step = 1.0;
    double fn = 0.0;
    bool accepted = false;
    const double noise = 1e-13 * std::abs(f);
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < dim; ++i) xn[i] = x[i] + step * p[i];
      fn = model.energy(xn, gn);
      const double gpn = dot(gn, p);
      if (std::isfinite(fn) &&
          (fn <= f + 1e-4 * step * gp ||
           (fn <= f + noise && std::abs(gpn) <= 0.9 * std::abs(gp)))) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (S.empty()) break;
      S.clear(); Y.clear(); rho.clear();
      continue;
    }

    std::vector<double> s(dim), yv(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = xn[i] - x[i];
      yv[i] = gn[i] - g[i];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-300) {
      S.push_back(std::move(s));
      Y.push_back(std::move(yv));
      rho.push_back(1.0 / sy);
      if (S.size() > static_cast<std::size_t>(options.memory)) {
        S.pop_front(); Y.pop_front(); rho.pop_front();
      }
    }
    x.swap(xn);
    g.swap(gn);
    f = fn;
  }

  res.iterations = it;
  res.grad_inf_norm = inf_norm(g);
  res.converged = res.grad_inf_norm <= options.grad_tol;
  res.energy = f;
  res.y = x;
  if (!res.converged && options.throw_on_cap) {
    std::ostringstream os;
    os << "discrete_minimizer stopped after " << it
       << " iterations with gradient inf-norm " << res.grad_inf_norm;
    throw MinimizerCapExceeded(os.str());
  }

  const auto H = model.heights(x);
  const auto& t = model.nodes();
  RadialProfile prof;
  prof.t = t;
  prof.H = H;
  prof.Hdot.resize(t.size());
  const std::size_t m = t.size();
  // Five-point slopes at every node (skewed near the ends), so the slope
  // error is the same smooth O(h^4) term throughout.
  static constexpr double kW[5][5] = {{-25, 48, -36, 16, -3},
                                      {-3, -10, 18, -6, 1},
                                      {1, -8, 0, 8, -1},
                                      {-1, 6, -18, 10, 3},
                                      {3, -16, 36, -48, 25}};
  const double h = t[1] - t[0];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t first = std::clamp<std::size_t>(i, 2, m - 3) - 2;
    double acc = 0.0;
    for (std::size_t k = 0; k < 5; ++k) acc += kW[i - first][k] * H[first + k];
    prof.Hdot[i] = acc / (12.0 * h);
  }
  prof.regime = classify_regime(prof);
  res.boundary_slope = prof.Hdot[0];
  res.profile = std::move(prof);
  return res;
}

}  // namespace annulus
