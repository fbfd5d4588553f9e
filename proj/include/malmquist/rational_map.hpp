#pragma once

#include <algorithm>

#include "malmquist/mobius.hpp"
#include "malmquist/polynomial.hpp"

namespace malmquist {

/// Roots of numerator and denominator closer than this count as shared.
inline constexpr double kCommonRootTol = 1e-9;

/// num(z) / den(z) with autonomous complex coefficients.
class RationalMap {
 public:
  /// Rejects a zero denominator and numerators sharing a root with the
  /// denominator (ParameterError).
  RationalMap(Polynomial num, Polynomial den);

  /// Cancels shared roots numerically, then scales so the denominator's
  /// leading coefficient is 1.
  static RationalMap reduced(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  /// max(deg num, deg den)
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  /// ratmap_eval with sphere semantics. Poles give infinity; an
  /// indeterminate 0/0 raises SingularityError("common-root evaluation").
  SpherePoint operator()(SpherePoint z) const;
  /// Value at z = infinity from the leading coefficients.
  SpherePoint at_infinity() const;

  RationalMap normalized() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// R o T as a reduced, normalized RationalMap.
RationalMap ratmap_pullback(const RationalMap& r, const MobiusMap& t);

}  // namespace malmquist
