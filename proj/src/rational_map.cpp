#include "malmquist/rational_map.hpp"

#include <cmath>
#include <vector>

namespace malmquist {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<Complex> roots_or_empty(const Polynomial& p) {
  if (p.is_zero() || p.degree() < 1) return {};
  return poly_roots(p);
}

// Multiple roots come back from the root finder spread over ~eps^(1/m);
// replacing each cluster by its mean restores most of the lost digits.
std::vector<Complex> merge_clusters(std::vector<Complex> roots) {
  std::vector<Complex> out(roots.size());
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && std::abs(roots[i] - roots[j]) <= 1e-6 * (1.0 + std::abs(roots[i])))
        members.push_back(j);
    Complex mean = 0.0;
    for (std::size_t m : members) mean += roots[m];
    mean /= static_cast<double>(members.size());
    for (std::size_t m : members) {
      used[m] = true;
      out[m] = mean;
    }
  }
  return out;
}

bool roots_match(Complex a, Complex b) {
  return std::abs(a - b) <= kCommonRootTol * (1.0 + std::abs(a));
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ParameterError("RationalMap: denominator is identically zero");
  const auto rn = merge_clusters(roots_or_empty(num_));
  const auto rd = merge_clusters(roots_or_empty(den_));
  for (Complex a : rn)
    for (Complex b : rd)
      if (roots_match(a, b))
        throw ParameterError("RationalMap: numerator and denominator share a root");
}

RationalMap RationalMap::reduced(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw ParameterError("RationalMap: denominator is identically zero");
  auto rn = merge_clusters(roots_or_empty(num));
  auto rd = merge_clusters(roots_or_empty(den));
  std::vector<bool> taken(rd.size(), false);
  for (Complex a : rn) {
    for (std::size_t j = 0; j < rd.size(); ++j) {
      if (taken[j] || !roots_match(a, rd[j])) continue;
      taken[j] = true;
      const Complex r = 0.5 * (a + rd[j]);
      num = num.deflate(r);
      den = den.deflate(r);
      break;
    }
  }
  return RationalMap(std::move(num), std::move(den)).normalized();
}

RationalMap RationalMap::normalized() const {
  const Complex lead = den_.leading();
  RationalMap out = *this;
  out.num_ = (1.0 / lead) * num_;
  out.den_ = (1.0 / lead) * den_;
  return out;
}

SpherePoint RationalMap::at_infinity() const {
  const int dn = num_.is_zero() ? -1 : num_.degree();
  const int dd = den_.degree();
  if (dn < dd) return Complex(0.0);
  if (dn > dd) return SpherePoint::infinity();
  return num_.leading() / den_.leading();
}

SpherePoint RationalMap::operator()(SpherePoint z) const {
  if (z.is_infinite()) return at_infinity();
  const Complex x = z.value();
  const Complex nv = num_(x);
  const Complex dv = den_(x);
  const bool num_zero = std::abs(nv) <= 8.0 * kEps * num_.magnitude_bound(x);
  const bool den_zero = std::abs(dv) <= 8.0 * kEps * den_.magnitude_bound(x);
  if (den_zero && num_zero) throw SingularityError("common-root evaluation");
  if (den_zero) return SpherePoint::infinity();
  return nv / dv;
}

RationalMap ratmap_pullback(const RationalMap& r, const MobiusMap& t) {
  const int m = r.degree();
  const Polynomial top({t.b(), t.a()});     // a x + b
  const Polynomial bottom({t.d(), t.c()});  // c x + d
  std::vector<Polynomial> top_pow{Polynomial({1.0})}, bottom_pow{Polynomial({1.0})};
  for (int i = 1; i <= m; ++i) {
    top_pow.push_back(top_pow.back() * top);
    bottom_pow.push_back(bottom_pow.back() * bottom);
  }
  // P(T(x)) (c x + d)^m = sum_i p_i (a x + b)^i (c x + d)^(m - i)
  auto homogenize = [&](const Polynomial& p) {
    Polynomial acc;
    for (int i = 0; i <= p.degree() && !p.is_zero(); ++i)
      acc = acc + p.coeff(i) * (top_pow[static_cast<std::size_t>(i)] *
                                bottom_pow[static_cast<std::size_t>(m - i)]);
    return acc.trimmed(1e-14);
  };
  return RationalMap::reduced(homogenize(r.num()), homogenize(r.den()));
}

}  // namespace malmquist
