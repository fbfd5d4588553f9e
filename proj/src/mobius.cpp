#include "malmquist/mobius.hpp"

#include <algorithm>
#include <cmath>

namespace malmquist {

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {
  double big = 0.0;
  for (Complex e : m_) big = std::max(big, std::abs(e));
  if (!(std::abs(det()) > kDetTol * big * big))
    throw ParameterError("MobiusMap: singular matrix (ad - bc = 0)");
}

SpherePoint MobiusMap::operator()(SpherePoint z) const {
  const auto [a, b, c, d] = m_;
  if (z.is_infinite()) {
    if (c == Complex(0.0)) return SpherePoint::infinity();
    return a / c;
  }
  const Complex den = c * z.value() + d;
  if (den == Complex(0.0)) return SpherePoint::infinity();
  return (a * z.value() + b) / den;
}

MobiusMap MobiusMap::normalized() const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(m_[i]) > std::abs(m_[k])) k = i;
  const Complex s = m_[k];
  return {m_[0] / s, m_[1] / s, m_[2] / s, m_[3] / s};
}

MobiusMap operator*(const MobiusMap& x, const MobiusMap& y) {
  return {x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
          x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d()};
}

MobiusMap mobius_conjugate(const MobiusMap& m, const MobiusMap& t) {
  return (t.inverse() * m * t).normalized();
}

double projective_distance(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma = std::max(ma, std::abs(a[i]));
    mb = std::max(mb, std::abs(b[i]));
  }
  if (ma == 0.0 || mb == 0.0) return (ma == mb) ? 0.0 : 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(a[i] * b[j] - a[j] * b[i]));
  return worst / (ma * mb);
}

}  // namespace malmquist
