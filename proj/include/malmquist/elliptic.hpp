#pragma once

#include "malmquist/complex.hpp"

namespace malmquist {

/// Modulus k (not the parameter m = k^2), its complement and K(k).
struct EllipticParams {
  Complex k;
  Complex kprime;  // principal sqrt(1 - k^2)
  Complex bigK;    // quarter period K(k)
};

EllipticParams make_elliptic_params(Complex k);

/// Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, k')).
/// Throws ParameterError("degenerate modulus") when k^2 = 1.
Complex complete_K(Complex k);

struct JacobiValues {
  Complex sn;
  Complex cn;
  Complex dn;
  bool pole = false;  // argument sits on (or numerically at) a pole of sn
};

/// sn, cn, dn by descending Landen transformation.
///
/// Moduli with |k| > 1 are first mapped to 1/k with the reciprocal-modulus
/// transformation; k^2 = 1 uses the hyperbolic closed form. Throws
/// ParameterError("modulus outside certified region") if the Landen
/// sequence fails to contract.
JacobiValues jacobi_sn_cn_dn(Complex u, Complex k);

inline Complex jacobi_sn(Complex u, Complex k) { return jacobi_sn_cn_dn(u, k).sn; }

/// Addition law for sn(u + sign * eps) written with values at u and eps.
Complex sn_addition(Complex u, Complex eps, Complex k, int sign = +1);

/// Newton solve of sn(u, k) = w started from guess (which picks the branch).
Complex sn_inverse(Complex w, Complex k, Complex guess);

/// Principal inverse, u = w R_F(1 - w^2, 1 - k^2 w^2, 1). Used as a starting
/// guess for sn_inverse when no branch preference exists.
Complex sn_inverse_principal(Complex w, Complex k);

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
Complex carlson_rf(Complex x, Complex y, Complex z);

}  // namespace malmquist
