#include <doctest.h>

#include <random>

#include "malmquist/catalog.hpp"
#include "malmquist/orbit.hpp"
#include "malmquist/riccati.hpp"

using namespace malmquist;

TEST_CASE("canonical step") {
  // b = (-1, -A, -1) is (f + A)/(1 - f)
  const Complex A(0.3, 0.1);
  const RiccatiCoefficients b{-1.0, -A, -1.0};
  CHECK(std::abs(riccati_step(b, 0.0).value() - A) < 1e-15);
  CHECK(projectively_equal(riccati_map(b), canonical_riccati_map(A)));
  const CanonicalRiccati c = canonicalize_riccati(b);
  CHECK(std::abs(c.A - A) < 1e-15);
  CHECK(projectively_equal(c.T, MobiusMap::identity()));
}

TEST_CASE("A for b = (2, 1, 1)") {
  CHECK(std::abs(canonicalize_riccati({2.0, 1.0, 1.0}).A + 5.0 / 9.0) < 1e-15);
}

TEST_CASE("canonical form by conjugation") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 25; ++i) {
    const RiccatiCoefficients b{{u(gen), u(gen)}, {u(gen), u(gen)}, {u(gen), u(gen)}};
    if (std::abs(b.b1 + b.b3) < 0.1) continue;
    const CanonicalRiccati c = canonicalize_riccati(b);
    // follow one orbit in both variables
    Complex g(0.1, 0.05);
    Complex f = c.T(g).value();
    for (int m = 0; m < 5; ++m) {
      g = canonical_riccati_map(c.A)(g).value();
      f = riccati_step(b, f).value();
      CHECK(std::abs(c.T(g).value() - f) < 1e-8 * (1 + std::abs(f)));
    }
  }
}

TEST_CASE("Riccati preconditions") {
  CHECK_THROWS_AS(riccati_map({2.0, 2.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(canonicalize_riccati({1.0, 3.0, -1.0}), ParameterError);
  CHECK_THROWS_AS(factor_eq10_to_riccati(1.0), ParameterError);
}

TEST_CASE("E10 factors lift to E10 orbits") {
  const Complex delta = 0.3;
  const CanonicalEquation eq = catalog_get(EquationId::E10, {{"delta", delta}});
  const Eq10Factorization fac = factor_eq10_to_riccati(delta);
  REQUIRE(fac.factors.size() == 4);
  for (const auto& factor : fac.factors) {
    const LiftedOrbit o = lifted_orbit(factor.b, lift_eq10, {0.7, 0.4}, 12);
    CHECK(orbit_residual(eq, o.f) < 1e-10);
  }
}

TEST_CASE("E11 factor lifts to E11 orbits") {
  const CanonicalEquation eq = catalog_get(EquationId::E11, {});
  const LiftedOrbit o = lifted_orbit(factor_eq11_to_riccati(), lift_eq11, {0.3, 0.6}, 12);
  CHECK(orbit_residual(eq, o.f) < 1e-10);
}

TEST_CASE("lifts on the sphere") {
  CHECK(lift_eq10(0.0).is_infinite());
  CHECK(lift_eq10(SpherePoint::infinity()).is_infinite());
  CHECK(std::abs(lift_eq10(1.0).value() - 1.0) < 1e-15);
  CHECK(lift_eq11(Complex(0, 1)).is_infinite());
  CHECK(std::abs(lift_eq11(SpherePoint::infinity()).value() + 1.0) < 1e-15);
}
