#include <doctest.h>

#include <random>

#include "malmquist/elliptic.hpp"
#include "malmquist/qrt.hpp"

using namespace malmquist;

namespace {

Matrix3c curve_e12(Complex kappa2) {
  Matrix3c c{};
  c[0][0] = 1.0;
  c[0][2] = -1.0;
  c[2][0] = -1.0;
  c[2][2] = kappa2;
  return c;
}

}  // namespace

TEST_CASE("biquadratic evaluation against expanded polynomial") {
  const Biquadratic c(curve_e12(4.0));
  const Complex x(0.3, 1.1), y(-0.7, 0.2);
  const Complex direct = x * x * y * y - x * x - y * y + 4.0;
  // stored normalized, compare projectively
  CHECK(std::abs(biquadratic_eval(c, x, y) * 4.0 - direct) < 1e-12);
  CHECK(c.symmetric());
}

TEST_CASE("zero matrix is rejected") { CHECK_THROWS_AS(Biquadratic(Matrix3c{}), ParameterError); }

TEST_CASE("symmetric step stays on the curve") {
  const Biquadratic c(curve_e12(4.0));
  Complex prev(0.7, 0.2);
  Complex cur = std::sqrt((prev * prev - 4.0) / (prev * prev - 1.0));
  for (int m = 0; m < 200; ++m) {
    const Complex next = qrt_step_symmetric(c, prev, cur);
    CHECK(curve_residual(c, next, cur) < 1e-12);
    prev = cur;
    cur = next;
  }
}

TEST_CASE("symmetric step needs a point on the curve") {
  const Biquadratic c(curve_e12(4.0));
  CHECK_THROWS(qrt_step_symmetric(c, 0.3, 0.4));
}

TEST_CASE("general QRT map conserves the pencil invariant") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix3c a{}, b{};
    for (auto& r : a)
      for (auto& v : r) v = u(gen);
    for (auto& r : b)
      for (auto& v : r) v = u(gen);
    const QRTPencil p(a, b);
    Complex x(u(gen), u(gen)), y(u(gen), u(gen));
    const Complex k = qrt_invariant(p, x, y);
    for (int m = 0; m < 50; ++m) {
      const QRTState s = qrt_step_general(p, x, y);
      REQUIRE_FALSE(s.singular);
      x = s.x;
      y = s.y;
      CHECK(std::abs(qrt_invariant(p, x, y) - k) < 1e-8 * (1 + std::abs(k)));
    }
  }
}

TEST_CASE("parallel pencil is rejected") {
  const Matrix3c a = curve_e12(2.0);
  CHECK_THROWS_AS(QRTPencil(a, Complex(2.0) * a), ParameterError);
}

TEST_CASE("elliptic parametrization of the canonical curve") {
  // x = sqrt(k) sn(u + eps), y = sqrt(k) sn(u) lies on x^2 y^2 + A(x^2 + y^2) + 2Bxy + 1 = 0
  const Complex k = 0.5, eps = 0.3;
  const SymmetricQRTParams ab = symmetric_params_from(k, eps);
  const Biquadratic c = canonical_curve(ab);
  for (double u : {0.1, 0.8, 1.7}) {
    const Complex y = std::sqrt(k) * jacobi_sn(u, k);
    const Complex x = std::sqrt(k) * jacobi_sn(u + eps, k);
    const Complex direct = x * x * y * y + ab.A * (x * x + y * y) + 2.0 * ab.B * x * y + 1.0;
    CHECK(std::abs(direct) < 1e-12);
    CHECK(curve_residual(c, x, y) < 1e-12);
  }
}

TEST_CASE("parametrization round trip") {
  const SymmetricQRTParams ab = symmetric_params_from(0.5, 0.3);
  const SymmetricParametrization p = parametrize_symmetric(ab);
  CHECK(std::abs(p.k - 0.5) < 1e-10);
  const SymmetricQRTParams back = symmetric_params_from(p.k, p.eps);
  CHECK(std::abs(back.A - ab.A) < 1e-9);
  CHECK(std::abs(back.B - ab.B) < 1e-9);
  const SymmetricParametrization m = parametrize_symmetric(ab, AdditionBranch::Minus);
  CHECK(std::abs(m.eps + p.eps) < 1e-12);
}

TEST_CASE("exact orbit lies on its curve") {
  const Complex k = 0.5, eps = 0.3;
  const Biquadratic c = canonical_curve(symmetric_params_from(k, eps));
  const Orbit orb = exact_symmetric_orbit(k, eps, 0.1, 60);
  REQUIRE(orb.size() == 60);
  for (std::size_t m = 0; m + 1 < orb.size(); ++m)
    CHECK(curve_residual(c, orb.values[m + 1].value(), orb.values[m].value()) < 1e-10);
}

TEST_CASE("mobius change of variables on curves") {
  const Biquadratic c(curve_e12(4.0));
  const MobiusMap tx(1.0, 2.0, -1.0, 1.0), ty(2.0, 0.0, 1.0, 1.0);
  const Biquadratic t = mobius_transform_biquadratic(c, tx, ty);
  // pick (X, Y) on c, pull back to (x, y) and check they sit on t
  const Complex Y(0.6, 0.3);
  const Complex X = std::sqrt((Y * Y - 4.0) / (Y * Y - 1.0));
  const Complex x = tx.inverse()(X).value(), y = ty.inverse()(Y).value();
  CHECK(curve_residual(t, x, y) < 1e-12);
  CHECK(curve_residual(t, x + 0.1, y) > 1e-6);
}

TEST_CASE("fit recovers a curve from several orbits") {
  const Complex k(0.5), eps(0.3);
  const Biquadratic truth = canonical_curve(symmetric_params_from(k, eps));
  std::vector<std::pair<Complex, Complex>> pairs;
  for (double c0 : {0.1, 0.45}) {
    const Orbit o = exact_symmetric_orbit(k, eps, Complex(c0, 0.2), 10);
    for (std::size_t m = 0; m + 1 < o.size(); ++m) pairs.emplace_back(o.values[m + 1].value(), o.values[m].value());
  }
  const BiquadraticFit f = fit_biquadratic(pairs);
  CHECK(cosine_distance(f.curve, truth) < 1e-10);
  CHECK(f.uniqueness_gap > kFitGapTol);
  CHECK(f.max_residual < 1e-10);
}

TEST_CASE("fit needs 12 pairs") {
  std::vector<std::pair<Complex, Complex>> pairs(11, {1.0, 2.0});
  CHECK_THROWS_AS(fit_biquadratic(pairs), FitError);
}

TEST_CASE("points on a line give a non-unique fit") {
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int i = 0; i < 20; ++i) pairs.emplace_back(0.1 * i, 0.2 * i + 0.3);
  CHECK_THROWS_AS(fit_biquadratic(pairs), FitError);
}
