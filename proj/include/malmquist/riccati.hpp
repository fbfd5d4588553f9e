#pragma once

#include <vector>

#include "malmquist/mobius.hpp"
#include "malmquist/orbit_data.hpp"

namespace malmquist {

/// f(z+1) = (b1 f + b2) / (f + b3)
struct RiccatiCoefficients {
  Complex b1;
  Complex b2;
  Complex b3;
};

/// Matrix (b1, b2; 1, b3); throws ParameterError when b2 = b1 b3.
MobiusMap riccati_map(const RiccatiCoefficients& b);
/// Coefficients of a Moebius map with c != 0, scaled so c = 1.
RiccatiCoefficients riccati_from_map(const MobiusMap& m);

SpherePoint riccati_step(const RiccatiCoefficients& b, SpherePoint f);

/// (1, A; -1, 1): f(z+1) = (f + A)/(1 - f), i.e. f(z+1) - f = f(z+1) f + A.
MobiusMap canonical_riccati_map(Complex a);

struct CanonicalRiccati {
  Complex A;
  MobiusMap T;  // f = T(g) turns the b-step into the canonical step for g
};

/// A = -(4 b2 + (b1 - b3)^2) / (b1 + b3)^2 and
/// T(g) = ((-b3 - b1) g + (b1 - b3)) / 2.
/// Throws ParameterError("non-canonicalizable") when b1 = -b3.
CanonicalRiccati canonicalize_riccati(const RiccatiCoefficients& b);

/// One of the four Riccati steps whose gamma-orbits lift to E10 solutions.
struct Eq10Factor {
  RiccatiCoefficients b;
  int sigma;  // sign choice inside the map
  int theta;  // outer exponent: +1 plain, -1 reciprocal
};

struct Eq10Factorization {
  Complex sqrt_branch;  // principal sqrt(1 - delta^2)
  std::vector<Eq10Factor> factors;  // factors[0] is the worked map
};

/// gamma(z+1) = {-theta ((-sigma i delta - s) gamma + sigma i) / (gamma - delta + sigma i s)}^theta
/// with s = sqrt(1 - delta^2). Throws ParameterError for delta = +-1.
Eq10Factorization factor_eq10_to_riccati(Complex delta);

/// f = (gamma + 1/gamma) / 2
SpherePoint lift_eq10(SpherePoint gamma);

/// gamma(z+1) = -((1 - sqrt 2) gamma + i) / (gamma - i + i sqrt 2)
RiccatiCoefficients factor_eq11_to_riccati();

/// f = (8 gamma^2 - (gamma^2 + 1)^2) / (gamma^2 + 1)^2
SpherePoint lift_eq11(SpherePoint gamma);

struct LiftedOrbit {
  std::vector<SpherePoint> gamma;
  Orbit f;
};

/// Iterates the gamma-step and maps each iterate through `lift`.
LiftedOrbit lifted_orbit(const RiccatiCoefficients& b, SpherePoint (*lift)(SpherePoint),
                         Complex gamma0, int steps);

}  // namespace malmquist
