#include "malmquist/riccati.hpp"

#include <cmath>

namespace malmquist {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

MobiusMap riccati_map(const RiccatiCoefficients& b) {
  const Complex det = b.b1 * b.b3 - b.b2;
  const double scale = std::max({std::abs(b.b1), std::abs(b.b2), std::abs(b.b3), 1.0});
  if (std::abs(det) <= kDetTol * scale * scale)
    throw ParameterError("Riccati coefficients: b2 = b1 b3 makes the map degenerate");
  return {b.b1, b.b2, 1.0, b.b3};
}

RiccatiCoefficients riccati_from_map(const MobiusMap& m) {
  if (m.c() == Complex(0.0)) throw ParameterError("riccati_from_map: map is affine (c = 0)");
  return {m.a() / m.c(), m.b() / m.c(), m.d() / m.c()};
}

SpherePoint riccati_step(const RiccatiCoefficients& b, SpherePoint f) { return riccati_map(b)(f); }

MobiusMap canonical_riccati_map(Complex a) { return {1.0, a, -1.0, 1.0}; }

CanonicalRiccati canonicalize_riccati(const RiccatiCoefficients& b) {
  riccati_map(b);  // validates
  const Complex sum = b.b1 + b.b3;
  if (std::abs(sum) <= 1e-12 * (1.0 + std::abs(b.b1) + std::abs(b.b3)))
    throw ParameterError("non-canonicalizable: b1 = -b3");
  const Complex diff = b.b1 - b.b3;
  const Complex a = -(4.0 * b.b2 + diff * diff) / (sum * sum);
  return {a, MobiusMap(-0.5 * sum, 0.5 * diff, 0.0, 1.0)};
}

Eq10Factorization factor_eq10_to_riccati(Complex delta) {
  if (std::abs(delta - 1.0) <= 1e-12 || std::abs(delta + 1.0) <= 1e-12)
    throw ParameterError("factor_eq10_to_riccati: delta = +-1");
  const Complex s = std::sqrt(1.0 - delta * delta);
  Eq10Factorization out{s, {}};
  const MobiusMap negate(-1.0, 0.0, 0.0, 1.0);
  for (int theta : {1, -1}) {
    for (int sigma : {1, -1}) {
      const double sg = sigma;
      const MobiusMap x(-sg * kI * delta - s, sg * kI, 1.0, -delta + sg * kI * s);
      const MobiusMap step = theta == 1 ? negate * x : MobiusMap::reciprocal() * x;
      out.factors.push_back({riccati_from_map(step), sigma, theta});
    }
  }
  return out;
}

SpherePoint lift_eq10(SpherePoint gamma) {
  if (gamma.is_infinite()) return SpherePoint::infinity();
  const Complex g = gamma.value();
  if (g == Complex(0.0)) return SpherePoint::infinity();
  return 0.5 * (g + 1.0 / g);
}

RiccatiCoefficients factor_eq11_to_riccati() {
  const double r2 = std::sqrt(2.0);
  // -((1 - r2) g + i) / (g - i + i r2)
  return {r2 - 1.0, -kI, kI * (r2 - 1.0)};
}

SpherePoint lift_eq11(SpherePoint gamma) {
  if (gamma.is_infinite()) return -1.0;
  const Complex g2 = gamma.value() * gamma.value();
  const Complex q = g2 + 1.0;
  if (std::abs(q) <= 1e-14 * (1.0 + std::abs(g2))) return SpherePoint::infinity();
  return (8.0 * g2 - q * q) / (q * q);
}

LiftedOrbit lifted_orbit(const RiccatiCoefficients& b, SpherePoint (*lift)(SpherePoint),
                         Complex gamma0, int steps) {
  if (steps < 1) throw ParameterError("lifted_orbit: steps must be >= 1");
  LiftedOrbit out;
  SpherePoint g = gamma0;
  for (int m = 0; m <= steps; ++m) {
    out.gamma.push_back(g);
    const SpherePoint f = lift(g);
    out.f.values.push_back(f);
    out.f.singular.push_back(f.is_infinite());
    if (m > 0) out.f.branches.push_back(-1);
    g = riccati_step(b, g);
  }
  return out;
}

}  // namespace malmquist
