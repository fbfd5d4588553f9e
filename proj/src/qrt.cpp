#include "malmquist/qrt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "malmquist/elliptic.hpp"

namespace malmquist {

namespace {

std::array<Complex, 3> row_times(const Matrix3c& m, const std::array<Complex, 3>& v) {
  std::array<Complex, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

std::array<Complex, 3> cross(const std::array<Complex, 3>& p, const std::array<Complex, 3>& q) {
  return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

double frobenius(const Matrix3c& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (Complex v : row) s += std::norm(v);
  return std::sqrt(s);
}

// sum_ij |M_ij| |v(x)_i| |v(y)_j|
double term_scale(const Matrix3c& m, Complex x, Complex y) {
  const auto vx = monomials(x);
  const auto vy = monomials(y);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += std::abs(m[i][j]) * std::abs(vx[i]) * std::abs(vy[j]);
  return s;
}

// v(T(x)) (c x + d)^2 = M_T v(x)
Matrix3c monomial_action(const MobiusMap& t) {
  const Complex a = t.a(), b = t.b(), c = t.c(), d = t.d();
  return {{{a * a, 2.0 * a * b, b * b},
           {a * c, a * d + b * c, b * d},
           {c * c, 2.0 * c * d, d * d}}};
}

Matrix3c multiply(const Matrix3c& x, const Matrix3c& y) {
  Matrix3c out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t l = 0; l < 3; ++l) out[i][j] += x[i][l] * y[l][j];
  return out;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex bilinear_eval(const Matrix3c& m, Complex x, Complex y) {
  const auto vx = monomials(x);
  const auto my = row_times(m, monomials(y));
  return vx[0] * my[0] + vx[1] * my[1] + vx[2] * my[2];
}

Matrix3c transpose(const Matrix3c& m) {
  Matrix3c t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Matrix3c operator+(const Matrix3c& a, const Matrix3c& b) {
  Matrix3c out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

Matrix3c operator*(Complex s, const Matrix3c& m) {
  Matrix3c out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = s * m[i][j];
  return out;
}

std::array<Complex, 9> flatten(const Matrix3c& m) {
  std::array<Complex, 9> out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[3 * i + j] = m[i][j];
  return out;
}

Biquadratic::Biquadratic(const Matrix3c& c) {
  Complex pivot = 0.0;
  for (const auto& row : c)
    for (Complex v : row)
      if (std::abs(v) > std::abs(pivot)) pivot = v;
  if (pivot == Complex(0.0)) throw ParameterError("Biquadratic: zero coefficient matrix");
  c_ = (1.0 / pivot) * c;
}

bool Biquadratic::symmetric() const {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(c_[i][j] - c_[j][i]) > 1e-12) return false;
  return true;
}

Complex biquadratic_eval(const Biquadratic& c, Complex x, Complex y) {
  return bilinear_eval(c.matrix(), x, y);
}

double curve_residual(const Biquadratic& c, Complex x, Complex y) {
  const double r = std::abs(biquadratic_eval(c, x, y));
  const double s = term_scale(c.matrix(), x, y);
  return s > 0.0 ? r / s : r;
}

double curve_distance(const Biquadratic& a, const Biquadratic& b) {
  const auto fa = flatten(a.matrix());
  const auto fb = flatten(b.matrix());
  return projective_distance(fa, fb);
}

double cosine_distance(const Biquadratic& a, const Biquadratic& b) {
  const auto fa = flatten(a.matrix());
  const auto fb = flatten(b.matrix());
  Complex dot = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    dot += std::conj(fa[i]) * fb[i];
    na += std::norm(fa[i]);
    nb += std::norm(fb[i]);
  }
  return std::max(0.0, 1.0 - std::abs(dot) / std::sqrt(na * nb));
}

Complex qrt_step_symmetric(const Biquadratic& c, Complex w_prev, Complex w_cur) {
  if (!c.symmetric()) throw ParameterError("qrt_step_symmetric: curve is not symmetric");
  if (curve_residual(c, w_prev, w_cur) > 1e-8)
    throw ParameterError("qrt_step_symmetric: point off curve");
  const auto s = row_times(c.matrix(), monomials(w_cur));  // a x^2 + b x + c
  const double size = std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]);
  if (size == 0.0) throw SingularityError("degenerate fiber");
  if (std::abs(s[0]) <= 1e-14 * size) {
    if (std::abs(s[1]) <= 1e-14 * size) throw SingularityError("degenerate fiber");
    return -s[2] / s[1];
  }
  const Complex sum_form = -s[1] / s[0] - w_prev;
  if (std::abs(w_prev) > 10.0 * std::abs(sum_form)) return s[2] / (s[0] * w_prev);
  return sum_form;
}

QRTPencil::QRTPencil(const Matrix3c& c0, const Matrix3c& c1) : c0_(c0), c1_(c1) {
  const double n0 = frobenius(c0), n1 = frobenius(c1);
  if (n0 == 0.0 || n1 == 0.0) throw ParameterError("QRTPencil: zero matrix");
  const auto f0 = flatten(c0), f1 = flatten(c1);
  Complex dot = 0.0;
  for (std::size_t i = 0; i < 9; ++i) dot += std::conj(f0[i]) * f1[i];
  // sine of the angle, from the part of c1 orthogonal to c0
  const Complex proj = dot / (n0 * n0);
  double rest = 0.0;
  for (std::size_t i = 0; i < 9; ++i) rest += std::norm(f1[i] - proj * f0[i]);
  if (std::sqrt(rest) / n1 <= 1e-10)
    throw ParameterError("QRTPencil: C0 and C1 are linearly dependent");
}

QRTState qrt_step_general(const QRTPencil& p, Complex x, Complex y) {
  // The other root x' of the x-slice satisfies det[v(x), v(x'), f] = 0,
  // which is linear in x'.
  const auto vy = monomials(y);
  const auto f = cross(row_times(p.c0(), vy), row_times(p.c1(), vy));
  const Complex den_x = f[1] - x * f[2];
  if (std::abs(den_x) <= 1e-12 * (std::abs(f[1]) + std::abs(x * f[2])) || den_x == Complex(0.0))
    return {x, y, true};
  const Complex x_next = (f[0] - x * f[1]) / den_x;

  const auto vx = monomials(x_next);
  const auto g = cross(row_times(transpose(p.c0()), vx), row_times(transpose(p.c1()), vx));
  const Complex den_y = g[1] - y * g[2];
  if (std::abs(den_y) <= 1e-12 * (std::abs(g[1]) + std::abs(y * g[2])) || den_y == Complex(0.0))
    return {x_next, y, true};
  const Complex y_next = (g[0] - y * g[1]) / den_y;
  if (!is_finite(x_next) || !is_finite(y_next)) return {x_next, y_next, true};
  return {x_next, y_next, false};
}

Complex qrt_invariant(const QRTPencil& p, Complex x, Complex y) {
  const Complex num = bilinear_eval(p.c0(), x, y);
  const Complex den = bilinear_eval(p.c1(), x, y);
  if (std::abs(den) <= 1e-15 * term_scale(p.c1(), x, y) || den == Complex(0.0))
    throw SingularityError("invariant pole");
  return -num / den;
}

Biquadratic canonical_curve(const SymmetricQRTParams& params) {
  Matrix3c c{};
  c[0][0] = 1.0;
  c[0][2] = params.A;
  c[2][0] = params.A;
  c[1][1] = 2.0 * params.B;
  c[2][2] = 1.0;
  return Biquadratic(c);
}

SymmetricQRTParams symmetric_params_from(Complex k, Complex eps) {
  const JacobiValues j = jacobi_sn_cn_dn(eps, k);
  if (j.pole) throw SingularityError("symmetric_params_from: eps at a pole of sn");
  const Complex ks2 = k * j.sn * j.sn;
  if (ks2 == Complex(0.0)) throw ParameterError("symmetric_params_from: k sn^2(eps) = 0");
  return {-1.0 / ks2, j.cn * j.dn / ks2};
}

SymmetricParametrization parametrize_symmetric(const SymmetricQRTParams& params,
                                               AdditionBranch branch) {
  const Complex a = params.A, b = params.B;
  if (std::abs(a) == 0.0) throw ParameterError("parametrize_symmetric: A = 0");
  // k + 1/k = (B^2 - A^2 - 1) / A
  const Complex s = (b * b - a * a - 1.0) / a;
  const Complex disc = std::sqrt(s * s - 4.0);
  Complex k = 0.5 * (s + disc);
  const Complex other = 0.5 * (s - disc);
  if (std::abs(other) < std::abs(k)) k = other;

  const Complex target = std::sqrt(-1.0 / (k * a));  // sn(eps)
  const Complex eps0 = sn_inverse(target, k, sn_inverse_principal(target, k));
  // eps and 2K - eps share sn and differ in the sign of cn
  const Complex bigK = complete_K(k);
  const double scale = 1.0 + std::abs(b);
  for (Complex eps : {eps0, 2.0 * bigK - eps0}) {
    const JacobiValues j = jacobi_sn_cn_dn(eps, k);
    if (j.pole) continue;
    const Complex b_eps = j.cn * j.dn / (k * j.sn * j.sn);
    if (std::abs(b_eps - b) <= 1e-8 * scale)
      return {k, branch == AdditionBranch::Plus ? eps : -eps};
  }
  throw ConvergenceError("parametrization failure");
}

Orbit exact_symmetric_orbit(Complex k, Complex eps, Complex c0, int m_count) {
  if (m_count < 1) throw ParameterError("exact_symmetric_orbit: m_count must be >= 1");
  Orbit orb;
  const Complex root_k = std::sqrt(k);
  for (int m = 0; m < m_count; ++m) {
    const JacobiValues j = jacobi_sn_cn_dn(eps * static_cast<double>(m) + c0, k);
    const bool pole = j.pole || std::abs(j.sn) > 1e12;
    orb.values.push_back(pole ? SpherePoint::infinity() : SpherePoint(root_k * j.sn));
    orb.singular.push_back(pole);
    if (m > 0) orb.branches.push_back(-1);
  }
  return orb;
}

Biquadratic mobius_transform_biquadratic(const Biquadratic& c, const MobiusMap& tx,
                                         const MobiusMap& ty) {
  const Matrix3c mx = monomial_action(tx.normalized());
  const Matrix3c my = monomial_action(ty.normalized());
  return Biquadratic(multiply(multiply(transpose(mx), c.matrix()), my));
}

BiquadraticFit fit_biquadratic(std::span<const std::pair<Complex, Complex>> pairs) {
  if (pairs.size() < 12) throw FitError("insufficient data: need at least 12 pairs");
  Eigen::MatrixXcd design(static_cast<Eigen::Index>(pairs.size()), 9);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto [x, y] = pairs[r];
    if (!is_finite(x) || !is_finite(y)) throw ParameterError("fit_biquadratic: non-finite pair");
    const auto vx = monomials(x);
    const auto vy = monomials(y);
    double norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const Complex v = vx[i] * vy[j];
        design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(3 * i + j)) = v;
        norm += std::norm(v);
      }
    // balance rows so large iterates do not dominate the fit
    design.row(static_cast<Eigen::Index>(r)) /= std::sqrt(norm);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double gap = (sv(7) - sv(8)) / sv(0);
  if (gap < kFitGapTol) throw FitError("non-unique curve");
  const auto null = svd.matrixV().col(8);
  Matrix3c c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) c[i][j] = null(static_cast<Eigen::Index>(3 * i + j));
  BiquadraticFit fit{Biquadratic(c), gap, 0.0};
  for (const auto& [x, y] : pairs) fit.max_residual = std::max(fit.max_residual, curve_residual(fit.curve, x, y));
  return fit;
}

}  // namespace malmquist
