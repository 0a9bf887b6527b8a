#include "annulus/solver.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>

namespace annulus {

namespace {

std::atomic<std::size_t> g_growth_checks{0};
std::atomic<std::size_t> g_growth_violations{0};

OdeOptions ode_options(const SolverConfig& c) {
  OdeOptions o;
  o.rel_tol = c.rel_tol;
  o.abs_tol = c.abs_tol;
  o.max_step = c.max_step;
  return o;
}

double aux_g(int n, const StoredEnergy& phi, double s, double v, const SolverConfig& c) {
  const double g = aux_rhs(n, phi, s, v);
  return c.fault == FaultInjection::flipped_aux_sign ? -g : g;
}

void check_growth(int n, double s, double v, double g, double where) {
  if (!(v >= 0.0)) return;
  g_growth_checks.fetch_add(1, std::memory_order_relaxed);
  const double bound = growth_bound(n, s, v);
  if (!(std::abs(g) <= bound * (1.0 + 1e-12) + 1e-300)) {
    g_growth_violations.fetch_add(1, std::memory_order_relaxed);
    std::ostringstream os;
    os.precision(17);
    os << "growth bound violated: |G| = " << std::abs(g) << " > " << bound
       << " (s = " << s << ", v = " << v << ")";
    throw GrowthBoundViolation(os.str(), where);
  }
}

void require_problem(int n, double R) {
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (!(R > 1.0)) throw InvalidArgument("outer radius R must exceed 1");
}

}  // namespace

GrowthBoundTally growth_bound_tally() {
  return {g_growth_checks.load(), g_growth_violations.load()};
}

AuxTrajectory integrate_aux(int n, const StoredEnergy& phi, double lambda,
                            double s_target, const SolverConfig& config) {
  config.validate();
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (!(lambda >= 0.0)) throw InvalidArgument("integrate_aux needs lambda >= 0");
  if (!(s_target > 0.0)) throw InvalidArgument("integrate_aux needs s_target > 0");

  auto rhs = [&](double s, const State<1>& y) -> State<1> {
    return {aux_g(n, phi, s, y[0], config)};
  };
  auto on_accept = [&](double s, const State<1>& y) {
    check_growth(n, s, y[0], aux_g(n, phi, s, y[0], config), s);
  };
  auto run = integrate_dopri<1>(rhs, 1.0, State<1>{lambda}, s_target,
                                ode_options(config), {}, on_accept);

  AuxTrajectory traj;
  traj.lambda = lambda;
  traj.s = run.solution.times();
  traj.v.reserve(traj.s.size());
  for (const auto& y : run.solution.states()) traj.v.push_back(y[0]);
  traj.dense = std::make_shared<const OdeSolution<1>>(std::move(run.solution));
  return traj;
}

ProfileRun integrate_profile(int n, const StoredEnergy& phi, double lambda, double R,
                             const SolverConfig& config, ElForm form) {
  config.validate();
  require_problem(n, R);
  if (!(lambda >= 0.0)) throw InvalidArgument("integrate_profile needs lambda >= 0");
  if (lambda == 0.0 && phi.ddphi_infinite_at_zero())
    throw MonotonicityLoss("lambda = 0 is degenerate when Phi''(0) is infinite", 1.0);

  const bool flipped = config.fault == FaultInjection::flipped_aux_sign;
  auto rhs = [&](double t, const State<2>& y) -> State<2> {
    const double H = y[0], K = y[1];
    double acc;
    if (form == ElForm::reduced && flipped) {
      const double s = H / t;
      const double v = s * K;
      acc = (H - t * K) * (v + s * aux_rhs(n, phi, s, v)) / (H * H);
    } else {
      acc = el_rhs(form, n, phi, t, H, K);
    }
    return {K, acc};
  };
  auto on_accept = [&](double t, const State<2>& y) {
    const double H = y[0], K = y[1];
    if (!(H > 0.0) || !(K > 0.0))
      throw MonotonicityLoss("profile lost monotonicity (Hdot <= 0)", t);
    const double s = H / t;
    const double v = s * K;
    check_growth(n, s, v, aux_g(n, phi, s, v, config), t);
  };

  const auto nodes = uniform_nodes(1.0, R, config.profile_nodes);
  auto result = integrate_dopri<2>(rhs, 1.0, State<2>{1.0, lambda}, R,
                                   ode_options(config), nodes, on_accept);

  auto sol = std::make_shared<const OdeSolution<2>>(std::move(result.solution));
  ProfileRun run;
  run.stats = result.stats;
  run.outer_image = sol->back()[0];
  run.outer_image_error = result.stats.error_estimate[0];
  run.profile = sample_profile(nodes, [sol](double t) {
    const auto y = (*sol)(t);
    return ProfilePoint{y[0], y[1]};
  });
  return run;
}

double outer_radius_map(int n, const StoredEnergy& phi, double R, double lambda,
                        const SolverConfig& config) {
  SolverConfig c = config;
  c.profile_nodes = 5;
  return integrate_profile(n, phi, lambda, R, c).outer_image;
}

double critical_radius(int n, const StoredEnergy& phi, double R,
                       const SolverConfig& config) {
  require_problem(n, R);
  if (phi.alpha() == 0.0) return 1.0;
  return outer_radius_map(n, phi, R, 0.0, config);
}

BvpResult solve_bvp(const AnnulusProblem& problem) {
  problem.validate();
  if (!problem.R_star) throw InvalidArgument("solve_bvp needs a target radius R*");
  const int n = problem.n;
  const double R = problem.R;
  const double target = *problem.R_star;
  const auto& phi = problem.phi;
  const auto& cfg = problem.config;

  const double r_circ = critical_radius(n, phi, R, cfg);
  if (target < r_circ) return NoSolution{r_circ};

  auto P = [&](double lambda) {
    if (lambda == 0.0) return r_circ;
    return outer_radius_map(n, phi, R, lambda, cfg);
  };
  auto f = [&](double lambda) { return P(lambda) - target; };

  int iterations = 0;
  double lo = cfg.lambda_lo;
  double flo = f(lo);
  if (flo > 0.0) {
    lo = 0.0;
    flo = r_circ - target;
  }
  double hi = cfg.lambda_hi;
  double fhi = f(hi);
  while (fhi < 0.0) {
    if (++iterations > cfg.max_iters)
      throw NonConvergence("bracket expansion exhausted max_iters", lo, hi);
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
  }

  double lambda;
  if (flo == 0.0) {
    lambda = lo;
  } else if (fhi == 0.0) {
    lambda = hi;
  } else {
    std::uintmax_t max_iter = static_cast<std::uintmax_t>(cfg.max_iters);
    const auto bracket = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    iterations += static_cast<int>(max_iter);
    const double a = bracket.first, b = bracket.second;
    lambda = std::abs(f(a)) <= std::abs(f(b)) ? a : b;
  }

  ShootingOutcome out;
  out.r_circ = r_circ;
  out.lambda = lambda;
  out.iterations = iterations;
  if (lambda == 0.0 && phi.ddphi_infinite_at_zero()) {
    throw NonConvergence("target equals the critical radius of a singular energy", 0.0, 0.0);
  }
  auto run = integrate_profile(n, phi, lambda, R, cfg);
  out.outer_image = run.outer_image;
  out.outer_image_error = run.outer_image_error;
  if (!(std::abs(out.outer_image - target) <= cfg.root_tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "shooting did not reach R* within root_tol: |P - R*| = "
       << std::abs(out.outer_image - target);
    throw NonConvergence(os.str(), lambda, lambda);
  }
  out.profile = std::move(run.profile);
  out.energy = total_energy(n, phi, out.profile);
  return out;
}

}  // namespace annulus
