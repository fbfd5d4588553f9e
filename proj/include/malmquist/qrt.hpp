#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "malmquist/mobius.hpp"
#include "malmquist/orbit_data.hpp"

namespace malmquist {

using Matrix3c = std::array<std::array<Complex, 3>, 3>;

/// v(x) = (x^2, x, 1)
inline std::array<Complex, 3> monomials(Complex x) { return {x * x, x, Complex(1.0)}; }

/// v(x)^T M v(y)
Complex bilinear_eval(const Matrix3c& m, Complex x, Complex y);
Matrix3c transpose(const Matrix3c& m);
Matrix3c operator+(const Matrix3c& a, const Matrix3c& b);
Matrix3c operator*(Complex s, const Matrix3c& m);
std::array<Complex, 9> flatten(const Matrix3c& m);

/// The curve v(x)^T C v(y) = 0. Entry C[i][j] multiplies x^(2-i) y^(2-j).
/// Stored normalized: the largest-magnitude entry equals 1.
class Biquadratic {
 public:
  /// Throws ParameterError for the zero matrix.
  explicit Biquadratic(const Matrix3c& c);

  const Matrix3c& matrix() const { return c_; }
  Complex operator()(int i, int j) const { return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  bool symmetric() const;

 private:
  Matrix3c c_;
};

/// v(x)^T C v(y); zero on the curve.
Complex biquadratic_eval(const Biquadratic& c, Complex x, Complex y);

/// |v(x)^T C v(y)| divided by the sum of the monomial magnitudes, so points
/// far from the origin are judged on the same footing as small ones.
double curve_residual(const Biquadratic& c, Complex x, Complex y);

/// Scale-free distance between two curves (see projective_distance).
double curve_distance(const Biquadratic& a, const Biquadratic& b);
/// 1 - |<a, b>| / (|a| |b|) on the flattened coefficient vectors.
double cosine_distance(const Biquadratic& a, const Biquadratic& b);

/// The other root of the x-slice of a symmetric curve through
/// (w_prev, w_cur): the symmetric QRT step.
Complex qrt_step_symmetric(const Biquadratic& c, Complex w_prev, Complex w_cur);

/// Two 3x3 matrices spanning the invariant pencil C0 + K C1.
class QRTPencil {
 public:
  /// Throws ParameterError if C0, C1 are (numerically) parallel.
  QRTPencil(const Matrix3c& c0, const Matrix3c& c1);
  const Matrix3c& c0() const { return c0_; }
  const Matrix3c& c1() const { return c1_; }

 private:
  Matrix3c c0_;
  Matrix3c c1_;
};

struct QRTState {
  Complex x;
  Complex y;
  bool singular = false;  // a denominator vanished; x, y are not meaningful
};

/// One step of the asymmetric QRT map (x-update, then y-update from the new x).
QRTState qrt_step_general(const QRTPencil& p, Complex x, Complex y);

/// K = -(v(x)^T C0 v(y)) / (v(x)^T C1 v(y)); throws SingularityError("invariant pole").
Complex qrt_invariant(const QRTPencil& p, Complex x, Complex y);

/// Coefficients of x^2 y^2 + A (x^2 + y^2) + 2 B x y + 1 = 0.
struct SymmetricQRTParams {
  Complex A;
  Complex B;
};

/// Matrix of the canonical symmetric curve for (A, B).
Biquadratic canonical_curve(const SymmetricQRTParams& params);

/// Sign of the shift in sn(u +/- eps).
enum class AdditionBranch { Plus, Minus };

struct SymmetricParametrization {
  Complex k;
  Complex eps;
};

/// A = -1/(k sn^2 eps), B = cn eps dn eps / (k sn^2 eps).
SymmetricQRTParams symmetric_params_from(Complex k, Complex eps);

/// Solves for (k, eps) given (A, B); |k| <= 1 is chosen from the pair k, 1/k.
SymmetricParametrization parametrize_symmetric(const SymmetricQRTParams& params,
                                               AdditionBranch branch = AdditionBranch::Plus);

/// f_m = sqrt(k) sn(eps m + c0, k), m = 0 .. m_count-1. Poles are flagged.
Orbit exact_symmetric_orbit(Complex k, Complex eps, Complex c0, int m_count);

/// C' with v(x)^T C' v(y) proportional to v(Tx(x))^T C v(Ty(y)) after
/// clearing denominators, so (x, y) on C' iff (Tx(x), Ty(y)) on C.
Biquadratic mobius_transform_biquadratic(const Biquadratic& c, const MobiusMap& tx,
                                         const MobiusMap& ty);

struct BiquadraticFit {
  Biquadratic curve;
  double uniqueness_gap;  // (sigma_8 - sigma_9) / sigma_1
  double max_residual;    // max curve_residual over the input pairs
};

inline constexpr double kFitGapTol = 1e-6;

/// Null direction of the 9-column monomial design matrix.
/// Needs at least 12 pairs; throws FitError("non-unique curve") when the
/// smallest two singular values are closer than kFitGapTol.
BiquadraticFit fit_biquadratic(std::span<const std::pair<Complex, Complex>> pairs);

}  // namespace malmquist
