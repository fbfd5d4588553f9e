#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace malmquist {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Base class for every error raised by the library.
class MalmquistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or constraint-violating parameters, unmet preconditions.
class ParameterError : public MalmquistError {
 public:
  using MalmquistError::MalmquistError;
};

/// An iterative method ran out of steps.
class ConvergenceError : public MalmquistError {
 public:
  using MalmquistError::MalmquistError;
};

/// Evaluation hit an indeterminate form, a branch point or a vanishing
/// denominator that cannot be continued through.
class SingularityError : public MalmquistError {
 public:
  using MalmquistError::MalmquistError;
};

/// Curve fitting could not single out a unique answer.
class FitError : public MalmquistError {
 public:
  using MalmquistError::MalmquistError;
};

/// A point of the Riemann sphere: a finite complex value or infinity.
class SpherePoint {
 public:
  constexpr SpherePoint() = default;
  constexpr SpherePoint(Complex value) : value_(value) {}  // NOLINT: implicit on purpose
  constexpr SpherePoint(double value) : value_(value) {}   // NOLINT

  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    p.value_ = Complex(std::numeric_limits<double>::infinity(), 0.0);
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws if the point is infinity.
  Complex value() const {
    if (infinite_) throw SingularityError("value() requested at infinity");
    return value_;
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{0.0, 0.0};
  bool infinite_ = false;
};

/// Principal n-th root; index j rotates it by exp(2 pi i j / n).
inline Complex nth_root(Complex value, int n, int index = 0) {
  if (value == Complex(0.0, 0.0)) return value;
  const double r = std::pow(std::abs(value), 1.0 / n);
  const double phase = (std::arg(value) + 2.0 * kPi * index) / n;
  return std::polar(r, phase);
}

}  // namespace malmquist
