#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "malmquist/continuum.hpp"
#include "malmquist/elliptic.hpp"
#include "malmquist/riccati.hpp"

using namespace malmquist;

namespace {

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("RK4 on w' = w^2 + 1 against tan") {
  const ScalarField f = [](double, Complex w) { return w * w + 1.0; };
  const Trajectory tr = ode_solve(f, 0.0, 0.0, 1.0, 0.01);
  CHECK(tr.node_count() == 101);
  CHECK(std::abs(tr(1.0) - std::tan(1.0)) < 1e-8);
  // dense output between nodes
  CHECK(std::abs(tr(0.555) - std::tan(0.555)) < 1e-8);
  CHECK_THROWS_AS(tr(1.5), ParameterError);
}

TEST_CASE("RK4 step is shrunk to land on the window end") {
  const ScalarField f = [](double, Complex w) { return w; };
  const Trajectory tr = ode_solve(f, 0.0, 1.0, 1.0, 0.3);
  CHECK(tr.node_count() == 5);
  CHECK(std::abs(tr.t_end() - 1.0) < 1e-15);
}

TEST_CASE("blow-up stops the trajectory") {
  const ScalarField f = [](double, Complex w) { return w * w + 1.0; };
  const Trajectory tr = ode_solve(f, 0.0, 0.0, 2.0, 1e-3);
  CHECK(tr.blew_up());
  CHECK(tr.t_end() < kPi / 2 + 1e-2);
}

TEST_CASE("order fit on synthetic data") {
  const std::vector<double> eps = {0.1, 0.05, 0.025};
  CHECK(std::abs(fit_order(eps, {3e-2, 7.5e-3, 1.875e-3}) - 2.0) < 1e-12);
  CHECK(std::isnan(fit_order(eps, {1e-15, 1e-16, 0.0})));
}

TEST_CASE("Riccati scheme is exact for A = 0") {
  const LimitStudy s = riccati_limit_study(0.0, 1.0, 0.5, dyadic_eps(4, 10));
  CHECK(max_of(s.errors) < 1e-12);
  // closed form w_m = w0 / (1 - w0 m eps)
  Complex w = 1.0;
  const double eps = 0.0625;
  for (int m = 1; m <= 8; ++m) w = w / (1.0 - eps * w);
  CHECK(std::abs(w - 1.0 / (1.0 - 8 * eps)) < 1e-14);
}

TEST_CASE("Riccati step local error against tan") {
  // one step from w0 = 0 with A = 1 gives eps, the flow gives tan(eps);
  // the difference is eps^3 / 3 + O(eps^5)
  for (double eps : {0.1, 0.05, 0.025}) {
    const Complex w = (0.0 + eps * 1.0) / (1.0 - eps * 0.0);
    const double local = std::abs(w - std::tan(eps));
    CHECK(std::abs(local / std::pow(eps, 3) - 1.0 / 3.0) < 0.01);
  }
  // so the global error decays like eps^2
  const LimitStudy s = riccati_limit_study(1.0, 0.0, 0.8, dyadic_eps(4, 10));
  CHECK(s.fitted_order == doctest::Approx(2.0).epsilon(0.05));
  CHECK_FALSE(s.blow_up);
}

TEST_CASE("Riccati study reports blow-up past pi/2") {
  const LimitStudy s = riccati_limit_study(1.0, 0.0, 2.0, dyadic_eps(4, 6));
  CHECK(s.blow_up);
}

TEST_CASE("limit study input checks") {
  CHECK_THROWS_AS(riccati_limit_study(1.0, 0.0, 0.8, {}), ParameterError);
  CHECK_THROWS_AS(riccati_limit_study(1.0, 0.0, 0.8, {0.1, 0.2}), ParameterError);
  CHECK_THROWS_AS(riccati_limit_study(1.0, 0.0, -1.0, {0.1}), ParameterError);
}

TEST_CASE("scaled symmetric relation holds on sn samples") {
  const LimitStudy s = qrt_limit_study(0.5, {0.3, 0.2, 0.1}, 1.0, 0.1);
  REQUIRE(s.relation_residuals.size() == 3);
  CHECK(max_of(s.relation_residuals) < 1e-8);
  CHECK(qrt_relation_residual(0.5, 0.2, 0.3, 0.9) > 1e-3);
}

TEST_CASE("RK reference converges at fourth order against sn") {
  const LimitStudy s = qrt_limit_study(0.5, {0.2, 0.1, 0.05, 0.025}, 1.0, 0.1);
  CHECK(s.fitted_order >= 3.7);
  CHECK(s.fitted_order <= 4.3);
}

TEST_CASE("coefficient limit") {
  const double k = 0.5;
  CHECK(std::abs(qrt_limit_coefficient(k, 1e-2) + (1.0 + k * k)) < 1e-4);
}

TEST_CASE("degenerate recurrence converges to the sine-type solution") {
  const DegenerateParams p{-1.0, 1.0, 0.0, 1.0, 1};
  const LimitStudy s = degenerate_limit_study(p, dyadic_eps(4, 9));
  CHECK(s.fitted_order >= 1.0);
  for (bool f : s.flagged) CHECK_FALSE(f);
  // (w')^2 = w^2 - 1, w(0) = 0 gives w = i sinh t
  const DegenerateOrbit o = degenerate_discrete_orbit(p, 1.0 / 512);
  CHECK(std::abs(o.f.back() - Complex(0, 1) * std::sinh(1.0)) < 1e-4);
  // and a tau2^2 = 1 gives (w')^2 = 1 - w^2, w = sin t
  const DegenerateOrbit s2 = degenerate_discrete_orbit({1.0, 1.0, 0.0, 1.0, 1}, 1.0 / 512);
  CHECK(std::abs(s2.f.back() - std::sin(1.0)) < 1e-4);
  const LimitStudy ss = degenerate_limit_study({1.0, 1.0, 0.0, 1.0, 1}, dyadic_eps(4, 9));
  CHECK(ss.fitted_order >= 1.0);
}

TEST_CASE("degenerate recurrence holds an equilibrium") {
  const DegenerateParams p{-1.0, 1.0, 1.0, 1.0, 1};
  for (double eps : {1.0 / 16, 1.0 / 256, 1.0 / 1024}) {
    const DegenerateOrbit o = degenerate_discrete_orbit(p, eps);
    double drift = 0.0;
    for (Complex f : o.f) drift = std::max(drift, std::abs(f - 1.0));
    CHECK(drift < 1e-6);
  }
  const LimitStudy s = degenerate_limit_study(p, dyadic_eps(4, 9));
  CHECK(max_of(s.errors) < 1e-6);
}

TEST_CASE("degenerate preconditions") {
  CHECK_THROWS_AS(degenerate_limit_study({0.0, 1.0, 0.0, 1.0, 1}, {0.1}), ParameterError);
}

TEST_CASE("E10 pipeline") {
  const LimitStudy s = riccati_limit_eq10(0.3, 0.5, 0.5, dyadic_eps(4, 10));
  CHECK(std::isfinite(s.coefficient.real()));
  CHECK(s.kind == "eq10");
  CHECK(std::isfinite(s.fitted_order));
  const CanonicalRiccati c = canonicalize_riccati(factor_eq10_to_riccati(0.3).factors.front().b);
  CHECK(std::abs(s.coefficient - c.A) < 1e-15);
  CHECK_THROWS_AS(riccati_limit_eq10(std::sqrt(0.5), 0.5, 0.5, {0.1}), ParameterError);
}

TEST_CASE("dyadic eps list") {
  const auto e = dyadic_eps(4, 6);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == 0.0625);
  CHECK(e[2] == 0.015625);
}
