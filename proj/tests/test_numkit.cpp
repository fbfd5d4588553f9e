#include <doctest.h>

#include <algorithm>
#include <random>

#include "malmquist/mobius.hpp"
#include "malmquist/polynomial.hpp"
#include "malmquist/rational_map.hpp"

using namespace malmquist;

namespace {

double min_dist(const std::vector<Complex>& roots, Complex z) {
  double d = 1e300;
  for (Complex r : roots) d = std::min(d, std::abs(r - z));
  return d;
}

}  // namespace

TEST_CASE("polynomial roots reproduce constructed roots") {
  const std::vector<Complex> want = {{1, 2}, {-0.5, 0}, {3, -1}, {0, 0.25}, {-2, -2}};
  const auto p = Polynomial::from_roots(want, {2.0, 1.0});
  const auto got = poly_roots(p);
  REQUIRE(got.size() == want.size());
  for (Complex r : want) CHECK(min_dist(got, r) < 1e-10);
  for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].real() <= got[i].real() + 1e-9);
}

TEST_CASE("roots of unity") {
  // z^6 - 1
  const Polynomial p({-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  const auto roots = poly_roots(p);
  REQUIRE(roots.size() == 6);
  for (int j = 0; j < 6; ++j) CHECK(min_dist(roots, std::polar(1.0, kPi * j / 3.0)) < 1e-12);
}

TEST_CASE("double root is found twice") {
  const std::vector<Complex> want = {1.0, 1.0, -3.0};
  const auto roots = poly_roots(Polynomial::from_roots(want));
  REQUIRE(roots.size() == 3);
  CHECK(std::count_if(roots.begin(), roots.end(), [](Complex r) { return std::abs(r - 1.0) < 1e-6; }) == 2);
}

TEST_CASE("constant polynomial has no roots") {
  CHECK_THROWS_AS(poly_roots(Polynomial({3.0})), ParameterError);
}

TEST_CASE("deflation and derivative") {
  const Polynomial p = Polynomial::from_roots(std::vector<Complex>{2.0, -1.0, 0.5});
  const Polynomial q = p.deflate(2.0);
  CHECK(q.degree() == 2);
  CHECK(std::abs(q(-1.0)) < 1e-14);
  CHECK(std::abs(q(0.5)) < 1e-14);
  // p' at a point by central difference
  const Complex z(0.3, 0.7);
  const double h = 1e-6;
  const Complex fd = (p(z + h) - p(z - h)) / (2 * h);
  CHECK(std::abs(p.derivative()(z) - fd) < 1e-8);
}

TEST_CASE("mobius composition matches nested evaluation") {
  const MobiusMap f(1.0, 2.0, {0, 1}, 3.0);
  const MobiusMap g({2, -1}, 0.5, 1.0, -1.0);
  for (Complex z : {Complex(0.1, 0.2), Complex(-3, 1), Complex(7, -2)}) {
    const Complex direct = f(g(z)).value();
    CHECK(std::abs((f * g)(z).value() - direct) < 1e-12 * (1 + std::abs(direct)));
    CHECK(std::abs(f.inverse()(f(z)).value() - z) < 1e-12 * (1 + std::abs(z)));
  }
}

TEST_CASE("mobius on the sphere") {
  const MobiusMap f(2.0, 1.0, 1.0, 3.0);
  CHECK(std::abs(f(SpherePoint::infinity()).value() - 2.0) < 1e-15);
  CHECK(f(-3.0).is_infinite());
  CHECK(MobiusMap::reciprocal()(0.0).is_infinite());
  CHECK_THROWS_AS(MobiusMap(1.0, 2.0, 2.0, 4.0), ParameterError);
}

TEST_CASE("projective equality ignores scale") {
  const MobiusMap f(1.0, 2.0, 3.0, 5.0);
  const MobiusMap g(Complex(0, 2), Complex(0, 4), Complex(0, 6), Complex(0, 10));
  CHECK(projectively_equal(f, g));
  CHECK_FALSE(projectively_equal(f, MobiusMap(1.0, 2.0, 3.0, 5.1)));
}

TEST_CASE("conjugation turns the step into one for the new variable") {
  const MobiusMap m(2.0, 1.0, 1.0, 1.0);
  const MobiusMap t(1.0, -1.0, 2.0, 1.0);
  const MobiusMap c = mobius_conjugate(m, t);
  const Complex g(0.4, -0.3);
  const Complex lhs = t(c(g)).value();
  const Complex rhs = m(t(g)).value();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("rational map evaluation, poles and infinity") {
  // (z^2 + 1) / (z - 2)
  const RationalMap r(Polynomial({1.0, 0.0, 1.0}), Polynomial({-2.0, 1.0}));
  CHECK(std::abs(r(3.0).value() - 10.0) < 1e-14);
  CHECK(r(2.0).is_infinite());
  CHECK(r.at_infinity().is_infinite());
  const RationalMap s(Polynomial({1.0, 0.0, 4.0}), Polynomial({1.0, 0.0, 2.0}));
  CHECK(std::abs(s.at_infinity().value() - 2.0) < 1e-15);
  CHECK(std::abs(s(SpherePoint::infinity()).value() - 2.0) < 1e-15);
}

TEST_CASE("shared roots are rejected or cancelled") {
  const Polynomial num = Polynomial::from_roots(std::vector<Complex>{1.0, 2.0});
  const Polynomial den = Polynomial::from_roots(std::vector<Complex>{1.0, 3.0});
  CHECK_THROWS_AS(RationalMap(num, den), ParameterError);
  const RationalMap r = RationalMap::reduced(num, den);
  CHECK(r.degree() == 1);
  CHECK(std::abs(r(0.0).value() - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("pullback equals composition") {
  const RationalMap r(Polynomial({1.0, 0.0, 1.0}), Polynomial({0.0, 0.0, 1.0, 0.5}));
  const MobiusMap t(1.0, 2.0, -1.0, 1.0);
  const RationalMap p = ratmap_pullback(r, t);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 10; ++i) {
    const Complex z(u(gen), u(gen));
    const Complex want = r(t(z)).value();
    CHECK(std::abs(p(z).value() - want) < 1e-9 * (1 + std::abs(want)));
  }
}
