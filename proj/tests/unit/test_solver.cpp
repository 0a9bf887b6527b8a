#include <doctest.h>

#include <cmath>
#include <random>

#include "annulus/quadratic.hpp"
#include "annulus/solver.hpp"

using namespace annulus;

namespace {

const StoredEnergy kUnit = make_quadratic(0, 0, 1);

ShootingOutcome solved(int n, const StoredEnergy& phi, double R, double R_star,
                       SolverConfig cfg = {}) {
  auto r = solve_bvp(AnnulusProblem{n, R, R_star, phi, cfg});
  REQUIRE(std::holds_alternative<ShootingOutcome>(r));
  return std::get<ShootingOutcome>(std::move(r));
}

}  // namespace

TEST_CASE("auxiliary trajectory against the closed form") {
  const double lambda = 0.7;
  const auto traj = integrate_aux(2, kUnit, lambda, 2.5, {});
  const double c0 = quadratic::c0_from_lambda(1, lambda);
  for (double s : {1.0, 1.3, 1.9, 2.5}) CHECK(std::abs(traj(s) - quadratic::aux_solution(1, c0, s)) <= 1e-9);
  CHECK(traj.s_begin() == 1.0);
  CHECK(traj.s_end() == 2.5);

  const auto one = integrate_aux(2, kUnit, 1.0, 1.0, {});
  CHECK(one.s.size() == 1);
  CHECK(one(1.0) == 1.0);

  // n = 3, integrated toward s = 0.5: v stays positive and decreases on
  // the approach to s = 1.
  const auto down = integrate_aux(3, kUnit, 0.5, 0.5, {});
  CHECK(down.s.back() == 0.5);
  for (double v : down.v) CHECK(v > 0);
  for (double s = 0.8; s < 1.0; s += 0.05) {
    CHECK(down(s) > down(s + 0.05));
    CHECK(aux_rhs(3, kUnit, s, down(s)) < 0);
  }
}

TEST_CASE("profile integration") {
  SolverConfig cfg;
  for (int n : {2, 3, 4})
    for (const auto& phi : {kUnit, StoredEnergy::polynomial({1, 0.5, 0.3, 0.1})}) {
      const auto run = integrate_profile(n, phi, 1.0, 2.0, cfg);
      for (std::size_t i = 0; i < run.profile.size(); ++i)
        CHECK(std::abs(run.profile.H[i] - run.profile.t[i]) <= 1e-12);
    }
  const auto in = integrate_profile(2, kUnit, 0.5, 2.0, cfg);
  CHECK(in.outer_image < 2.0);
  CHECK(in.profile.size() == static_cast<std::size_t>(cfg.profile_nodes));
  CHECK(in.profile.t.back() == 2.0);
}

TEST_CASE("profile matches the closed form for the implied slope") {
  const quadratic::QuadraticCase c{1.0, 2.0, 3.0};
  const auto run = integrate_profile(2, kUnit, quadratic::implied_lambda(c), 2.0, {});
  const auto cf = quadratic::closed_form_profile(c, run.profile.t);
  for (std::size_t i = 0; i < cf.size(); ++i) CHECK(std::abs(cf.H[i] - run.profile.H[i]) <= 1e-6);
}

TEST_CASE("outer radius map") {
  SolverConfig cfg;
  CHECK(outer_radius_map(2, kUnit, 2, 1, cfg) == doctest::Approx(2).epsilon(1e-12));
  const double p05 = outer_radius_map(2, kUnit, 2, 0.5, cfg);
  const double p1 = outer_radius_map(2, kUnit, 2, 1, cfg);
  const double p2 = outer_radius_map(2, kUnit, 2, 2, cfg);
  const double p10 = outer_radius_map(2, kUnit, 2, 10, cfg);
  CHECK(p05 < 2);
  CHECK(2 < p2);
  CHECK(p10 > p2);
  CHECK(p2 > p1);
}

TEST_CASE("halving rel_tol moves P by less than the reported error estimate") {
  for (int n : {2, 3}) {
    for (double lambda : {0.3, 2.0}) {
      SolverConfig loose;
      loose.rel_tol = 1e-8;
      loose.abs_tol = 1e-10;
      SolverConfig tight = loose;
      tight.rel_tol *= 0.5;
      const auto a = integrate_profile(n, kUnit, lambda, 2.0, loose);
      const auto b = integrate_profile(n, kUnit, lambda, 2.0, tight);
      CHECK(std::abs(a.outer_image - b.outer_image) <= a.outer_image_error);
    }
  }
}

TEST_CASE("critical radius") {
  SolverConfig cfg;
  CHECK(critical_radius(2, StoredEnergy::xlogx(1), 2, cfg) == 1.0);
  CHECK(std::abs(critical_radius(2, kUnit, 2, cfg) - quadratic::nitsche_bound(1, 2)) <= 1e-6);
  CHECK(std::abs(critical_radius(2, make_quadratic(0, 0, 1e-3), 2, cfg) - 1.25) <= 1e-4);
  for (int n : {3, 4}) {
    const double rc = critical_radius(n, kUnit, 2, cfg);
    CHECK(rc > 1.0);
    CHECK(rc < 2.0);
  }
  CHECK_THROWS_AS(integrate_profile(2, StoredEnergy::xlogx(1), 0.0, 2.0, cfg), MonotonicityLoss);
}

TEST_CASE("solve_bvp") {
  SUBCASE("identity") {
    for (int n : {2, 3, 4})
      for (const auto& phi : {make_quadratic(1, 0, 1), StoredEnergy::polynomial({1, 0.5, 0.3, 0.1})}) {
        const auto s = solved(n, phi, 2.0, 2.0);
        CHECK(std::abs(s.lambda - 1) <= 1e-8);
        for (std::size_t i = 0; i < s.profile.size(); ++i)
          CHECK(std::abs(s.profile.H[i] - s.profile.t[i]) <= 1e-8);
      }
  }
  SUBCASE("below the critical radius") {
    const auto r = solve_bvp(AnnulusProblem{2, 2.0, 1.1, kUnit, {}});
    REQUIRE(std::holds_alternative<NoSolution>(r));
    CHECK(std::get<NoSolution>(r).r_circ == doctest::Approx(quadratic::nitsche_bound(1, 2)));
  }
  SUBCASE("closed-form slope") {
    const auto s = solved(2, kUnit, 2.0, 3.0);
    CHECK(std::abs(s.lambda - quadratic::implied_lambda({1.0, 2.0, 3.0})) <= 1e-6);
    CHECK(std::abs(s.outer_image - 3.0) <= SolverConfig{}.root_tol);
    CHECK(s.profile.regime == Regime::elastic);
  }
  SUBCASE("large target needs bracket expansion") {
    const auto s = solved(3, kUnit, 2.0, 12.0);
    CHECK(s.lambda > 2.0);
    CHECK(std::abs(s.outer_image - 12.0) <= 1e-10);
  }
  SUBCASE("singular energy") {
    const auto s = solved(2, StoredEnergy::xlogx(1), 2.0, 1.4);
    CHECK(s.profile.regime == Regime::inelastic);
  }
  SUBCASE("missing target") {
    CHECK_THROWS_AS(solve_bvp(AnnulusProblem{2, 2.0, std::nullopt, kUnit, {}}), InvalidArgument);
  }
}

TEST_CASE("round trip of the shooting parameter") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  SolverConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const double target = u(gen);
    const double R_star = outer_radius_map(2, kUnit, 2.0, target, cfg);
    const auto s = solved(2, kUnit, 2.0, R_star);
    CHECK(std::abs(s.lambda - target) <= cfg.root_tol);
  }
}

TEST_CASE("regimes and the sign of H - t Hdot") {
  SolverConfig cfg;
  for (int n : {2, 3})
    for (double lambda : {0.3, 0.8, 1.5, 4.0}) {
      const auto run = integrate_profile(n, kUnit, lambda, 2.0, cfg);
      const auto& p = run.profile;
      CHECK(p.regime == (lambda < 1 ? Regime::inelastic : Regime::elastic));
      CHECK((lambda < 1 ? run.outer_image < 2.0 : run.outer_image > 2.0));
      for (std::size_t i = 1; i < p.size(); ++i) {
        const double gap = p.H[i] - p.t[i] * p.Hdot[i];
        CHECK((lambda < 1 ? gap > 0 : gap < 0));
        CHECK((lambda < 1 ? p.H[i] / p.t[i] < p.H[i - 1] / p.t[i - 1]
                          : p.H[i] / p.t[i] > p.H[i - 1] / p.t[i - 1]));
      }
    }
}

TEST_CASE("growth bound is checked at accepted steps") {
  const auto before = growth_bound_tally();
  integrate_profile(3, kUnit, 2.0, 2.0, {});
  const auto after = growth_bound_tally();
  CHECK(after.checks > before.checks);
  CHECK(after.violations == before.violations);
}

TEST_CASE("injected sign fault changes the solution") {
  SolverConfig bad;
  bad.fault = FaultInjection::flipped_aux_sign;
  const double lambda = quadratic::implied_lambda({1.0, 2.0, 3.0});
  bool differs = false;
  try {
    differs = std::abs(integrate_profile(2, kUnit, lambda, 2.0, bad).outer_image - 3.0) > 1e-3;
  } catch (const IntegrationError&) {
    differs = true;
  }
  CHECK(differs);
}
