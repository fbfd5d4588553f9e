#include <doctest.h>

#include "malmquist/catalog.hpp"
#include "malmquist/orbit.hpp"

using namespace malmquist;

TEST_CASE("fixed branch sequence reproduces sine samples") {
  const CanonicalEquation eq = catalog_get(EquationId::E9, {});
  // roots of 1 are +1 (index 0) and -1 (index 1)
  const Orbit o = iterate(eq, 0.0, 8, BranchPolicy::fixed({0, 0, 1, 0, 0, 0, 1, 0}));
  REQUIRE(o.size() == 9);
  // 1 - f^2 at f = +-1 carries roundoff of order 1e-16, and its square root
  // is of order 1e-8
  for (int m = 0; m <= 8; ++m) CHECK(std::abs(o.values[m].value() - std::sin(kPi * m / 2)) < 1e-7);
}

TEST_CASE("exhausted fixed sequence is an error") {
  const CanonicalEquation eq = catalog_get(EquationId::E9, {});
  CHECK_THROWS_AS(iterate(eq, 0.0, 4, BranchPolicy::fixed({0, 1})), ParameterError);
}

TEST_CASE("principal branch picks the principal root") {
  const CanonicalEquation eq = catalog_get(EquationId::E18, {});
  const Orbit o = iterate(eq, 0.5, 3, BranchPolicy::principal());
  const Complex f1 = o.values[1].value();
  CHECK(std::abs(f1 - std::pow(Complex(1.0 - 0.125), 1.0 / 3.0)) < 1e-14);
  CHECK(orbit_residual(eq, o) < 1e-13);
}

TEST_CASE("nearest prediction stays on smooth branches") {
  const CanonicalEquation eq = catalog_get(EquationId::E12, {{"kappa", 2.0}});
  const Orbit o = iterate(eq, 3.0, 50, BranchPolicy::nearest());
  CHECK(o.size() == 51);
  CHECK(orbit_residual(eq, o) < 1e-8);
}

TEST_CASE("poles are flagged and iteration continues") {
  // E16 at f = 1 has a pole; R(inf) = -1 is finite
  const CanonicalEquation eq = catalog_get(EquationId::E16, {});
  const Orbit o = iterate(eq, 1.0, 3, BranchPolicy::principal());
  REQUIRE(o.size() == 4);
  CHECK(o.values[1].is_infinite());
  CHECK(o.singular[1]);
  CHECK(std::abs(std::pow(o.values[2].value(), 2) + 1.0) < 1e-14);
}

TEST_CASE("iteration stops when infinity is fixed") {
  // E9: f = inf has R(inf) = inf; start on a pole is impossible, so use E15 at f = 0
  const CanonicalEquation eq = catalog_get(EquationId::E15, {});
  const Orbit o = iterate(eq, 0.0, 5, BranchPolicy::principal());
  CHECK(o.values[1].is_infinite());
  CHECK(o.size() >= 2);
}

TEST_CASE("orbit pairs skip poles") {
  Orbit o;
  o.values = {1.0, SpherePoint::infinity(), 2.0, 3.0};
  o.singular = {false, true, false, false};
  o.branches = {0, 0, 0};
  const auto p = orbit_pairs(o);
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == Complex(3.0));
  CHECK(p[0].second == Complex(2.0));
}

TEST_CASE("H-substitution chain on E14") {
  const Complex eta = std::polar(1.0, 2 * kPi / 3);
  const CanonicalEquation eq = catalog_get(EquationId::E14, {{"eta", eta}});
  const Orbit o = iterate(eq, {0.4, 0.3}, 30, BranchPolicy::nearest());
  const HChain c = h_substitution_chain(o, eta);
  CHECK(c.curve_residual < 1e-8);
  REQUIRE(c.h.size() == c.H.size());
  const Complex f0(0.4, 0.3);
  CHECK(std::abs(c.h[0] * c.h[0] - (f0 + Complex(0, 1) * eta) / (f0 - Complex(0, 1) * eta)) < 1e-13);
  CHECK(std::abs(c.H[0] - (c.h[0] * c.h[0] + 1.0) / (2.0 * c.h[0])) < 1e-13);
}

TEST_CASE("H-substitution is singular at f = i eta") {
  const Complex eta = std::polar(1.0, 2 * kPi / 3);
  Orbit o;
  o.values = {Complex(0, 1) * eta, 0.5};
  o.singular = {false, false};
  o.branches = {0};
  CHECK_THROWS_AS(h_substitution_chain(o, eta), SingularityError);
}
