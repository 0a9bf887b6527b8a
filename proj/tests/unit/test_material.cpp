#include <doctest.h>

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "annulus/material.hpp"

using namespace annulus;

TEST_CASE("quadratic evaluators") {
  const auto e = make_quadratic(1, 0, 1);
  CHECK(e.phi(2) == 5.0);
  CHECK(e.dphi(2) == 4.0);
  CHECK(e.ddphi(2) == 2.0);
  CHECK(make_quadratic(0, 0, 1).chi(0) == 0.5);
  CHECK(make_quadratic(0, 0, 1).alpha() == 0.5);
  const auto f = make_quadratic(1, 1, 0.5);
  for (double d : {0.0, 0.3, 7.0, 1e4}) CHECK(f.ddphi(d) == 0.5);
  CHECK(f.alpha() == doctest::Approx(2.0));
}

TEST_CASE("make_quadratic rejects bad parameters") {
  CHECK_THROWS_AS(make_quadratic(1, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(make_quadratic(1, 0, -2), InvalidArgument);
  try {
    make_quadratic(-1, 0, 1);
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("d = ") != std::string::npos);
  }
}

TEST_CASE("validate_energy reports grid violations") {
  const std::vector<double> g{0.1, 1, 10};
  CHECK(validate_energy(make_quadratic(1, 0, 1), g).passed());

  const auto bad = validate_energy(StoredEnergy::polynomial({1, 0, -0.5}), g);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.positivity.size() == 1);
  CHECK(bad.positivity[0].d == 10.0);
  CHECK(bad.convexity.size() == 3);

  const std::vector<double> g2{0.5, 1, 2};
  CHECK(validate_energy(make_quadratic(0, 1, 1), g2).passed());

  CHECK_THROWS_AS(validate_energy(make_quadratic(1, 0, 1), std::vector<double>{}),
                  InvalidArgument);
  CHECK_THROWS_AS(validate_energy(make_quadratic(1, 0, 1), std::vector<double>{-1.0}),
                  InvalidArgument);
}

TEST_CASE("chi is the reciprocal of Phi'' on accepted energies") {
  const std::vector<StoredEnergy> energies{
      make_quadratic(1, 0, 1), make_quadratic(0.2, 3, 0.1),
      StoredEnergy::polynomial({1, 0.5, 0.3, 0.1}), StoredEnergy::xlogx(0.5)};
  for (const auto& e : energies) {
    const auto report = validate_energy(e);
    REQUIRE(report.passed());
    CHECK(report.alpha == e.alpha());
    for (double d : log_grid()) CHECK(std::abs(e.chi(d) * e.ddphi(d) - 1.0) <= 1e-12);
  }
}

TEST_CASE("xlogx has alpha zero and a singular Phi'' at the origin") {
  const auto e = StoredEnergy::xlogx(1);
  CHECK(e.alpha() == 0.0);
  CHECK(std::isinf(e.ddphi(0)));
  CHECK(e.chi(0) == 0.0);
  CHECK(e.phi(1) == 1.0);
  CHECK(e.phi(0) == 2.0);
  CHECK_THROWS_AS(StoredEnergy::xlogx(0), InvalidArgument);
}

TEST_CASE("polynomial derivatives") {
  const auto p = StoredEnergy::polynomial({1, 2, 3, 4});
  CHECK(p.phi(2) == 1 + 4 + 12 + 32);
  CHECK(p.dphi(2) == 2 + 12 + 48);
  CHECK(p.ddphi(2) == 6 + 48);
  CHECK(p.d3phi(2) == 24);
}

TEST_CASE("names are canonical and round-trip") {
  CHECK(make_quadratic(0, 0, 1).name() == "quad:a=0,b=0,kappa=1");
  CHECK(StoredEnergy::polynomial({1, 0.5, 0.3}).name() == "poly:1,0.5,0.3");
  CHECK(StoredEnergy::xlogx(0.25).name() == "xlogx:c=0.25");
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) {
    const auto s = format_real(x);
    double y = 0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    CHECK(y == x);
  }
}
