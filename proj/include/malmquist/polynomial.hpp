#pragma once

#include <span>
#include <vector>

#include "malmquist/complex.hpp"

namespace malmquist {

/// Dense univariate polynomial with complex coefficients in ascending order.
///
/// Trailing (leading-degree) coefficients that are exactly zero are dropped
/// at construction, so the leading coefficient is nonzero unless the
/// polynomial is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs)
      : Polynomial(std::vector<Complex>(coeffs)) {}

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  /// c * z^degree
  static Polynomial monomial(Complex c, int degree);
  /// lead * prod (z - r)
  static Polynomial from_roots(std::span<const Complex> roots, Complex lead = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; the zero polynomial reports 0.
  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(int i) const;
  Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

  Complex operator()(Complex z) const;
  /// sum |c_i| |z|^i, the scale of rounding errors in Horner evaluation.
  double magnitude_bound(Complex z) const;
  /// 1 + max |c_i|
  double scale() const;

  Polynomial derivative() const;
  /// Quotient of synthetic division by (z - root); the remainder is dropped.
  Polynomial deflate(Complex root) const;
  /// Drops leading coefficients below rel_tol * max |c_i|.
  Polynomial trimmed(double rel_tol) const;
  Polynomial pow(int exponent) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);

 private:
  std::vector<Complex> coeffs_;
};

/// Default relative tolerance used by poly_roots' residual certificate.
inline constexpr double kRootTol = 1e-12;

/// All roots with multiplicity, via Aberth-Ehrlich simultaneous iteration.
///
/// Roots are sorted by real part, then imaginary part (real parts agreeing
/// to 1e-9 count as equal). Throws ParameterError for constant input and
/// ConvergenceError when 200 sweeps do not certify every root.
std::vector<Complex> poly_roots(const Polynomial& p);

}  // namespace malmquist
