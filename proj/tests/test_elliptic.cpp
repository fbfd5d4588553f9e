#include <doctest.h>

#include <cmath>
#include <random>

#include "malmquist/elliptic.hpp"

using namespace malmquist;

namespace {

// composite Simpson on the defining integral of K
double quad_K(double k) {
  const int n = 2000;
  const double a = 0.0, b = kPi / 2, h = (b - a) / n;
  auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("K by AGM agrees with quadrature") {
  for (double k : {0.1, 0.5, 0.9}) CHECK(std::abs(complete_K(k) - quad_K(k)) < 1e-11);
  CHECK(std::abs(complete_K(0.0) - kPi / 2) < 1e-15);
  CHECK_THROWS_AS(complete_K(1.0), ParameterError);
}

TEST_CASE("degenerate moduli reduce to sin and tanh") {
  for (double u : {0.1, 0.7, 1.9, -2.4}) {
    CHECK(std::abs(jacobi_sn(u, 0.0) - std::sin(u)) < 1e-14);
    CHECK(std::abs(jacobi_sn(u, 1.0) - std::tanh(u)) < 1e-14);
  }
}

TEST_CASE("sn at the quarter period and periodicity") {
  for (Complex k : {Complex(0.3), Complex(0.8), Complex(0.4, 0.3)}) {
    const Complex K = complete_K(k);
    CHECK(std::abs(jacobi_sn(K, k) - 1.0) < 1e-12);
    const Complex u(0.37, 0.21);
    CHECK(std::abs(jacobi_sn(u + 4.0 * K, k) - jacobi_sn(u, k)) < 1e-11);
  }
}

TEST_CASE("derivatives by finite differences") {
  // sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn
  const double h = 1e-5;
  for (Complex k : {Complex(0.5), Complex(0.95), Complex(0.3, -0.4), Complex(1.7)}) {
    for (Complex u : {Complex(0.3, 0.1), Complex(-1.2, 0.4), Complex(2.5, -0.2)}) {
      const JacobiValues v = jacobi_sn_cn_dn(u, k);
      const JacobiValues p = jacobi_sn_cn_dn(u + h, k), m = jacobi_sn_cn_dn(u - h, k);
      CHECK(std::abs((p.sn - m.sn) / (2 * h) - v.cn * v.dn) < 1e-8);
      CHECK(std::abs((p.cn - m.cn) / (2 * h) + v.sn * v.dn) < 1e-8);
      CHECK(std::abs((p.dn - m.dn) / (2 * h) + k * k * v.sn * v.cn) < 1e-8);
    }
  }
}

TEST_CASE("Pythagorean identities") {
  for (Complex k : {Complex(0.2), Complex(0.7, 0.2), Complex(2.5)})
    for (double re = -3; re <= 3; re += 0.5)
      for (double im = -0.6; im <= 0.6; im += 0.3) {
        const JacobiValues v = jacobi_sn_cn_dn({re, im}, k);
        if (v.pole) continue;
        CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-10);
        CHECK(std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0) < 1e-10);
      }
}

TEST_CASE("large imaginary arguments stay accurate") {
  // sn(u + 2 i K') = sn(u)
  const double k = 0.3;
  const Complex kp = std::sqrt(1.0 - k * k);
  const Complex Kp = complete_K(kp);
  const Complex u(0.4, 0.1);
  for (int n : {1, 3, 7})
    CHECK(std::abs(jacobi_sn(u + 2.0 * n * Complex(0, 1) * Kp, k) - jacobi_sn(u, k)) < 1e-10);
}

TEST_CASE("pole of sn at i K'") {
  const double k = 0.5;
  const Complex Kp = complete_K(std::sqrt(1.0 - k * k));
  CHECK(jacobi_sn_cn_dn(Complex(0, 1) * Kp, k).pole);
}

TEST_CASE("Maclaurin series of sn") {
  const double k = 0.3, u = 0.1, k2 = k * k;
  const double series = u - (1 + k2) * std::pow(u, 3) / 6 + (1 + 14 * k2 + k2 * k2) * std::pow(u, 5) / 120;
  CHECK(std::abs(jacobi_sn(u, k) - series) <= 1e-9);
}

TEST_CASE("addition law matches direct evaluation") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> a(-1.5, 1.5), b(-0.3, 0.3), e(0.05, 0.5);
  for (int i = 0; i < 30; ++i) {
    const Complex u(a(gen), b(gen));
    const double eps = e(gen);
    const double k = 0.6;
    CHECK(std::abs(sn_addition(u, eps, k) - jacobi_sn(u + eps, k)) < 1e-9);
    CHECK(std::abs(sn_addition(u, eps, k, -1) - jacobi_sn(u - eps, k)) < 1e-9);
  }
}

TEST_CASE("inverse sn") {
  const Complex k(0.5, 0.1);
  const Complex u(0.3, 0.2);
  const Complex w = jacobi_sn(u, k);
  CHECK(std::abs(sn_inverse(w, k, sn_inverse_principal(w, k)) - u) < 1e-10);
  CHECK(std::abs(sn_inverse_principal(w, k) - u) < 1e-10);
}

TEST_CASE("Carlson R_F reference values") {
  // R_F(0, 1, 2) and R_F(1, 1, 1) = 1
  CHECK(std::abs(carlson_rf(0.0, 1.0, 2.0) - 1.3110287771460599052) < 1e-13);
  CHECK(std::abs(carlson_rf(1.0, 1.0, 1.0) - 1.0) < 1e-14);
  // K(k) = R_F(0, 1 - k^2, 1)
  CHECK(std::abs(carlson_rf(0.0, 0.75, 1.0) - quad_K(0.5)) < 1e-11);
}
