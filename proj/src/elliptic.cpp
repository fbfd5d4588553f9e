#include "malmquist/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace malmquist {

namespace {

constexpr int kMaxLanden = 64;
constexpr double kLandenFloor = 1e-10;

bool is_unit_square(Complex k) { return std::abs(1.0 - k * k) < 1e-15; }

JacobiValues pole_values() {
  const double inf = std::numeric_limits<double>::infinity();
  return {Complex(inf, 0.0), Complex(inf, 0.0), Complex(inf, 0.0), true};
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// |k| <= 1, k^2 != 1.
JacobiValues landen(Complex u, Complex k) {
  std::vector<Complex> ks;  // k_1, k_2, ... (descending moduli)
  Complex kn = k;
  int steps = 0;
  while (std::abs(kn) >= kLandenFloor) {
    if (++steps > kMaxLanden) throw ParameterError("modulus outside certified region");
    const Complex kp = std::sqrt(1.0 - kn * kn);
    const Complex onep = 1.0 + kp;
    // (1 - k') / (1 + k') without cancellation for small k.
    const Complex next = (kn * kn) / (onep * onep);
    if (!(std::abs(next) < std::abs(kn))) throw ParameterError("modulus outside certified region");
    ks.push_back(next);
    kn = next;
  }

  Complex un = u;
  for (Complex kk : ks) un /= (1.0 + kk);

  // Bottom of the descent: trigonometric limit with the O(k^2) correction.
  const Complex s0 = std::sin(un);
  const Complex c0 = std::cos(un);
  const Complex corr = 0.25 * kn * kn * (un - s0 * c0);
  Complex sn = s0 - corr * c0;
  Complex cn = c0 + corr * s0;
  Complex dn = 1.0 - 0.5 * kn * kn * s0 * s0;

  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const Complex kk = *it;
    const Complex s2 = sn * sn;
    const Complex den = 1.0 + kk * s2;
    if (den == Complex(0.0)) return pole_values();
    const Complex new_sn = (1.0 + kk) * sn / den;
    const Complex new_cn = cn * dn / den;
    const Complex new_dn = (1.0 - kk * s2) / den;
    sn = new_sn;
    cn = new_cn;
    dn = new_dn;
  }
  if (!finite(sn) || !finite(cn) || !finite(dn) || std::abs(sn) > 1e150) return pole_values();
  return {sn, cn, dn, false};
}

// Shifts u by multiples of 2K and 2iK' before the descent: sn(u + 2K) = -sn u,
// cn(u + 2K) = -cn u, and cn, dn change sign under u + 2iK'. Large imaginary
// arguments otherwise cost digits in the trigonometric bottom step.
JacobiValues reduced_landen(Complex u, Complex k) {
  Complex bigK;
  try {
    bigK = complete_K(k);
  } catch (const MalmquistError&) {
    return landen(u, k);
  }
  const Complex w1 = 2.0 * bigK;
  long n1 = 0, n2 = 0;
  if (std::abs(k) >= 1e-6) {
    Complex w2;
    try {
      w2 = Complex(0.0, 2.0) * complete_K(std::sqrt(1.0 - k * k));
    } catch (const MalmquistError&) {
      return landen(u, k);
    }
    const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
    if (std::abs(det) > 1e-12 * std::abs(w1) * std::abs(w2)) {
      const double x = (u.real() * w2.imag() - w2.real() * u.imag()) / det;
      const double y = (w1.real() * u.imag() - u.real() * w1.imag()) / det;
      n1 = std::lround(x);
      n2 = std::lround(y);
      // poles sit at 2mK + (2n+1) i K'
      if (std::abs(x - static_cast<double>(n1)) < 1e-13 &&
          std::abs(std::abs(y - static_cast<double>(n2)) - 0.5) < 1e-13)
        return pole_values();
      u -= static_cast<double>(n1) * w1 + static_cast<double>(n2) * w2;
    }
  } else {
    n1 = std::lround((u / w1).real());
    u -= static_cast<double>(n1) * w1;
  }
  JacobiValues r = landen(u, k);
  if (r.pole) return r;
  if (n1 % 2 != 0) {
    r.sn = -r.sn;
    r.cn = -r.cn;
  }
  if (n2 % 2 != 0) {
    r.cn = -r.cn;
    r.dn = -r.dn;
  }
  return r;
}

}  // namespace

Complex complete_K(Complex k) {
  if (is_unit_square(k)) throw ParameterError("degenerate modulus");
  Complex a = 1.0;
  Complex b = std::sqrt(1.0 - k * k);
  for (int i = 0; i < 64; ++i) {
    if (std::abs(a - b) <= 4e-16 * std::abs(a)) return kPi / (2.0 * a);
    const Complex an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    // right choice of the geometric mean: the one closer to the new a
    if (std::abs(an - b) > std::abs(an + b)) b = -b;
    a = an;
  }
  if (std::abs(a - b) <= 1e-14 * std::abs(a)) return kPi / (2.0 * a);
  throw ConvergenceError("complete_K: AGM did not converge in 64 steps");
}

EllipticParams make_elliptic_params(Complex k) {
  return {k, std::sqrt(1.0 - k * k), complete_K(k)};
}

JacobiValues jacobi_sn_cn_dn(Complex u, Complex k) {
  if (is_unit_square(k)) {
    const Complex ch = std::cosh(u);
    if (ch == Complex(0.0) || !finite(ch)) return pole_values();
    return {std::tanh(u), 1.0 / ch, 1.0 / ch, false};
  }
  if (std::abs(k) > 1.0) {
    // sn(u,k) = sn(ku,1/k)/k, cn(u,k) = dn(ku,1/k), dn(u,k) = cn(ku,1/k)
    const JacobiValues r = reduced_landen(k * u, 1.0 / k);
    if (r.pole) return r;
    return {r.sn / k, r.dn, r.cn, false};
  }
  return reduced_landen(u, k);
}

Complex sn_addition(Complex u, Complex eps, Complex k, int sign) {
  const JacobiValues e = jacobi_sn_cn_dn(eps, k);
  const JacobiValues v = jacobi_sn_cn_dn(u, k);
  if (e.pole || v.pole) throw SingularityError("addition-formula singularity");
  const Complex den = 1.0 - k * k * e.sn * e.sn * v.sn * v.sn;
  if (std::abs(den) <= 1e-12) throw SingularityError("addition-formula singularity");
  const double s = sign >= 0 ? 1.0 : -1.0;
  return (e.cn * e.dn * v.sn + s * e.sn * v.cn * v.dn) / den;
}

Complex sn_inverse(Complex w, Complex k, Complex guess) {
  Complex u = guess;
  const double target = 1.0 + std::abs(w);
  for (int iter = 0; iter < 100; ++iter) {
    const JacobiValues j = jacobi_sn_cn_dn(u, k);
    if (j.pole) throw ConvergenceError("sn_inverse: Newton iterate hit a pole");
    const Complex f = j.sn - w;
    if (std::abs(f) <= 1e-15 * target) return u;
    const Complex deriv = j.cn * j.dn;
    if (deriv == Complex(0.0)) throw ConvergenceError("sn_inverse: stationary point");
    const Complex step = f / deriv;
    u -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(u))) {
      if (std::abs(jacobi_sn(u, k) - w) <= 1e-10 * target) return u;
    }
  }
  const JacobiValues j = jacobi_sn_cn_dn(u, k);
  if (!j.pole && std::abs(j.sn - w) <= 1e-10 * target) return u;
  throw ConvergenceError("sn_inverse: Newton did not converge in 100 steps");
}

Complex carlson_rf(Complex x, Complex y, Complex z) {
  for (int iter = 0; iter < 200; ++iter) {
    const Complex mean = (x + y + z) / 3.0;
    const Complex dx = 1.0 - x / mean;
    const Complex dy = 1.0 - y / mean;
    const Complex dz = 1.0 - z / mean;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-4) {
      const Complex e2 = dx * dy - dz * dz;
      const Complex e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
             std::sqrt(mean);
    }
    const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const Complex lambda = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
  }
  throw ConvergenceError("carlson_rf: duplication did not converge");
}

Complex sn_inverse_principal(Complex w, Complex k) {
  if (w == Complex(0.0)) return 0.0;
  return w * carlson_rf(1.0 - w * w, 1.0 - k * k * w * w, 1.0);
}

}  // namespace malmquist
