#include "malmquist/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace malmquist {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(Complex c, int degree) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex(0.0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex lead) {
  Polynomial p({lead});
  for (Complex r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

Complex Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_bound(Complex z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double Polynomial::scale() const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return 1.0 + m;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::deflate(Complex root) const {
  if (coeffs_.size() <= 1) return {};
  const std::size_t n = coeffs_.size() - 1;
  std::vector<Complex> q(n);
  Complex carry = coeffs_[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = coeffs_[i] + carry * root;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  std::vector<Complex> v = coeffs_;
  while (!v.empty() && std::abs(v.back()) <= rel_tol * m) v.pop_back();
  return Polynomial(std::move(v));
}

Polynomial Polynomial::pow(int exponent) const {
  Polynomial result({1.0});
  for (int i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Complex(-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(v));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> v(p.coeffs_);
  for (Complex& c : v) c *= s;
  return Polynomial(std::move(v));
}

namespace {

constexpr int kMaxSweeps = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Key for deterministic ordering: real parts within 1e-9 compare equal.
bool root_less(Complex a, Complex b) {
  const double qa = std::round(a.real() / 1e-9);
  const double qb = std::round(b.real() / 1e-9);
  if (qa != qb) return qa < qb;
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p) {
  const int n = p.degree();
  if (p.is_zero() || n < 1) throw ParameterError("poly_roots: constant polynomial");

  const Polynomial monic = (1.0 / p.leading()) * p;
  const Polynomial dmonic = monic.derivative();
  if (n == 1) return {-monic.coeff(0)};

  // Initial ring at the geometric-mean root radius, angles jittered by a
  // fixed-seed generator so repeated calls agree bit for bit.
  double radius = std::pow(std::abs(monic.coeff(0)), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  std::mt19937_64 rng(0x5eed1234ULL);
  std::uniform_real_distribution<double> jitter(0.0, 0.25);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double angle = (2.0 * kPi * (i + jitter(rng))) / n + 0.4;
    z[static_cast<std::size_t>(i)] = std::polar(radius * (1.0 + 0.01 * i), angle);
  }

  std::vector<bool> done(z.size(), false);
  bool all_done = false;
  for (int sweep = 0; sweep < kMaxSweeps && !all_done; ++sweep) {
    all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Complex pv = monic(z[i]);
      if (std::abs(pv) <= 4.0 * kEps * monic.magnitude_bound(z[i])) {
        done[i] = true;
        continue;
      }
      const Complex dv = dmonic(z[i]);
      Complex ratio = (dv == Complex(0.0)) ? Complex(1e-3 * (1.0 + std::abs(z[i])))
                                           : pv / dv;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (diff != Complex(0.0)) repulsion += 1.0 / diff;
      }
      const Complex w = ratio / (1.0 - ratio * repulsion);
      z[i] -= w;
      done[i] = std::abs(w) <= 4.0 * kEps * (1.0 + std::abs(z[i]));
      if (!done[i]) all_done = false;
    }
  }

  const double tol = kRootTol * monic.scale();
  for (Complex r : z) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(monic(r)) > tol)
      throw ConvergenceError("poly_roots: Aberth iteration did not converge");
  }
  std::sort(z.begin(), z.end(), root_less);
  return z;
}

}  // namespace malmquist
