#include <doctest.h>

#include <cmath>
#include <numbers>

#include "annulus/kinematics.hpp"

using namespace annulus;

TEST_CASE("sphere measure") {
  CHECK(sphere_measure(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_measure(3) == doctest::Approx(4 * std::numbers::pi));
  CHECK(sphere_measure(4) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("norm and Jacobian of radial maps") {
  CHECK(frobenius_sq(2, 2, 3, 0.5) == doctest::Approx(9.0 / 4 + 0.25));
  CHECK(frobenius_sq(3, 1, 1, 1) == 3.0);
  CHECK(jacobian(3, 2, 4, 0.5) == doctest::Approx(0.5 * 4));
  // identity: ||Dh||^2 = n, J = 1
  for (int n : {2, 3, 5}) {
    CHECK(frobenius_sq(n, 1.7, 1.7, 1) == doctest::Approx(n));
    CHECK(jacobian(n, 1.7, 1.7, 1) == doctest::Approx(1));
  }
  CHECK_THROWS_AS(frobenius_sq(2, 0, 1, 1), InvalidArgument);
}

TEST_CASE("Lagrangian density") {
  const auto phi = make_quadratic(1, 0, 1);
  // identity in the plane at t: t (2 + Phi(1)) = 4 t
  CHECK(lagrangian_density(2, phi, 1.5, 1.5, 1) == doctest::Approx(6.0));
  CHECK_THROWS_AS(lagrangian_density(2, phi, 1, 1, -0.1), InvalidArgument);
  CHECK_THROWS_AS(lagrangian_density(2, phi, 1, 0, 1), InvalidArgument);

  const AnnulusProblem p{3, 2.0, 2.5, phi, {}};
  CHECK(lagrangian_density(p, 1.2, 1.3, 0.8) == lagrangian_density(3, phi, 1.2, 1.3, 0.8));
}

TEST_CASE("analytic gradient and K-curvature match finite differences") {
  const auto phi = StoredEnergy::polynomial({1, 0.5, 0.3, 0.1});
  for (int n : {2, 3, 4}) {
    const double t = 1.3, H = 1.1, K = 0.7;
    const auto g = lagrangian_gradient(n, phi, t, H, K);
    const double h = 1e-6;
    CHECK(g.value == doctest::Approx(lagrangian_density(n, phi, t, H, K)));
    CHECK(g.dH == doctest::Approx((lagrangian_density(n, phi, t, H + h, K) -
                                   lagrangian_density(n, phi, t, H - h, K)) / (2 * h))
                      .epsilon(1e-7));
    CHECK(g.dHdot == doctest::Approx((lagrangian_density(n, phi, t, H, K + h) -
                                      lagrangian_density(n, phi, t, H, K - h)) / (2 * h))
                         .epsilon(1e-7));
    const double k = 1e-4;
    const double fd = (lagrangian_density(n, phi, t, H, K + k) - 2 * g.value +
                       lagrangian_density(n, phi, t, H, K - k)) / (k * k);
    CHECK(lagrangian_kk(n, phi, t, H, K) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("regime classification") {
  const auto nodes = uniform_nodes(1, 2, 11);
  const auto conformal = sample_profile(nodes, [](double t) { return ProfilePoint{t, 1}; });
  CHECK(conformal.regime == Regime::conformal);
  const auto in = sample_profile(nodes, [](double t) { return ProfilePoint{std::sqrt(t), 0.5 / std::sqrt(t)}; });
  CHECK(in.regime == Regime::inelastic);
  const auto el = sample_profile(nodes, [](double t) { return ProfilePoint{t * t, 2 * t}; });
  CHECK(el.regime == Regime::elastic);
  const auto mixed = sample_profile(nodes, [](double t) {
    return ProfilePoint{t + 0.1 * std::sin(6 * t), 1 + 0.6 * std::cos(6 * t)};
  });
  CHECK(mixed.regime == Regime::mixed);
  CHECK(to_string(Regime::elastic) == "elastic");
}

TEST_CASE("profile interpolation without dense output") {
  RadialProfile p;
  p.t = uniform_nodes(1, 2, 41);
  for (double t : p.t) {
    p.H.push_back(t * t);
    p.Hdot.push_back(2 * t);
  }
  // cubic Hermite reproduces quadratics exactly
  const auto q = p.at(1.537);
  CHECK(q.H == doctest::Approx(1.537 * 1.537));
  CHECK(q.Hdot == doctest::Approx(2 * 1.537));
  CHECK(p.t_min() == 1);
  CHECK(p.t_max() == 2);
}

TEST_CASE("normalization and validation") {
  const auto [R, Rs] = normalize(2, 6, 0.5, 1.25);
  CHECK(R == 3);
  CHECK(Rs == 2.5);
  CHECK_THROWS_AS(normalize(2, 1, 1, 2), InvalidArgument);
  CHECK_THROWS_AS((AnnulusProblem{1, 2, 2, make_quadratic(0, 0, 1), {}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((AnnulusProblem{2, 1, 2, make_quadratic(0, 0, 1), {}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((AnnulusProblem{2, 2, 0.5, make_quadratic(0, 0, 1), {}}.validate()), InvalidArgument);
  SolverConfig c;
  c.rel_tol = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("uniform nodes hit both ends exactly") {
  const auto t = uniform_nodes(1, 3.3, 7);
  CHECK(t.size() == 7);
  CHECK(t.front() == 1.0);
  CHECK(t.back() == 3.3);
}
