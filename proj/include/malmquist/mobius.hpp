#pragma once

#include <array>
#include <span>

#include "malmquist/complex.hpp"

namespace malmquist {

/// Nonsingular 2x2 complex matrix acting as z -> (a z + b) / (c z + d).
///
/// The matrix is only meaningful up to a nonzero scalar; use
/// projectively_equal() to compare maps.
class MobiusMap {
 public:
  /// Throws ParameterError when |ad - bc| <= kDetTol * (max |entry|)^2.
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// z -> 1/z
  static MobiusMap reciprocal() { return {0.0, 1.0, 1.0, 0.0}; }
  static MobiusMap scaling(Complex alpha) { return {alpha, 0.0, 0.0, 1.0}; }

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  std::array<Complex, 4> entries() const { return m_; }
  Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  /// mobius_apply: total on the Riemann sphere.
  SpherePoint operator()(SpherePoint z) const;

  MobiusMap inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }
  /// Divides by the largest-magnitude entry.
  MobiusMap normalized() const;

  /// (outer * inner)(z) = outer(inner(z))
  friend MobiusMap operator*(const MobiusMap& outer, const MobiusMap& inner);

 private:
  std::array<Complex, 4> m_;
};

inline constexpr double kDetTol = 1e-14;

/// T^-1 o M o T, normalized. Conjugating the step f -> M(f) by the change
/// of variable f = T(g) yields the step g -> T^-1 M T (g).
MobiusMap mobius_conjugate(const MobiusMap& m, const MobiusMap& t);

/// Scale-free distance between two coefficient vectors seen as projective
/// points: max_ij |a_i b_j - a_j b_i| / (max|a| max|b|).
double projective_distance(std::span<const Complex> a, std::span<const Complex> b);

inline bool projectively_equal(const MobiusMap& x, const MobiusMap& y, double tol = 1e-12) {
  const auto ex = x.entries();
  const auto ey = y.entries();
  return projective_distance(ex, ey) <= tol;
}

}  // namespace malmquist
