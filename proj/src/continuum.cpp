#include "malmquist/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "malmquist/elliptic.hpp"
#include "malmquist/riccati.hpp"

namespace malmquist {

namespace {

constexpr double kFineStep = 1e-4;
constexpr double kNoiseFloor = 1e-13;

bool state_ok(const OdeState& w) {
  for (Complex v : w)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > kBlowUp) return false;
  return true;
}

OdeState axpy(const OdeState& w, double a, const OdeState& k) {
  OdeState out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] + a * k[i];
  return out;
}

void check_eps_list(const std::vector<double>& eps_list, double T) {
  if (eps_list.empty()) throw ParameterError("limit study: empty eps list");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw ParameterError("limit study: eps must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw ParameterError("limit study: eps list must be strictly decreasing");
  }
  if (!(T > 0.0)) throw ParameterError("limit study: window T must be positive");
}

int lattice_steps(double T, double eps) {
  return static_cast<int>(std::ceil(T / eps - 1e-9));
}

// Reference run whose node (m * substeps) sits at t = m eps.
struct LatticeReference {
  Trajectory traj;
  std::size_t substeps;
  bool has(int m) const { return static_cast<std::size_t>(m) * substeps < traj.node_count(); }
  const OdeState& at(int m) const { return traj.node(static_cast<std::size_t>(m) * substeps); }
};

LatticeReference lattice_reference(const OdeField& field, OdeState w0, double eps, int steps,
                                   double max_step) {
  const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil(eps / max_step - 1e-9)));
  return {ode_solve(field, 0.0, std::move(w0), eps * steps, eps / static_cast<double>(sub)), sub};
}

void finish(LimitStudy& s) {
  s.fitted_order = fit_order(s.eps_list, s.errors);
}

}  // namespace

Complex Trajectory::operator()(double t, std::size_t index) const {
  const double tol = 1e-12 * (1.0 + std::abs(t));
  if (t < t0_ - tol || t > t_end() + tol)
    throw ParameterError("Trajectory: time outside the integrated window");
  if (states_.size() == 1) return states_[0][index];
  auto i = static_cast<std::size_t>(std::floor((t - t0_) / h_));
  i = std::min(i, states_.size() - 2);
  const double s = std::clamp((t - node_time(i)) / h_, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * states_[i][index] + h10 * h_ * slopes_[i][index] + h01 * states_[i + 1][index] +
         h11 * h_ * slopes_[i + 1][index];
}

Trajectory ode_solve(const OdeField& field, double t0, OdeState w0, double T, double h) {
  if (!(h > 0.0)) throw ParameterError("ode_solve: step must be positive");
  if (!(T >= 0.0)) throw ParameterError("ode_solve: window must be non-negative");
  if (w0.empty()) throw ParameterError("ode_solve: empty state");
  Trajectory tr;
  tr.t0_ = t0;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(T / h - 1e-9)));
  tr.h_ = T > 0.0 ? T / static_cast<double>(n) : h;
  tr.states_.push_back(std::move(w0));
  tr.slopes_.push_back(field(t0, tr.states_.back()));
  if (T == 0.0) return tr;
  const double hh = tr.h_;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tr.node_time(i);
    const OdeState& w = tr.states_.back();
    const OdeState& k1 = tr.slopes_.back();
    const OdeState k2 = field(t + 0.5 * hh, axpy(w, 0.5 * hh, k1));
    const OdeState k3 = field(t + 0.5 * hh, axpy(w, 0.5 * hh, k2));
    const OdeState k4 = field(t + hh, axpy(w, hh, k3));
    OdeState next(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
      next[j] = w[j] + hh / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!state_ok(next)) {
      tr.blew_up_ = true;
      break;
    }
    OdeState slope = field(t + hh, next);
    tr.states_.push_back(std::move(next));
    tr.slopes_.push_back(std::move(slope));
  }
  return tr;
}

Trajectory ode_solve(const ScalarField& field, double t0, Complex w0, double T, double h) {
  const OdeField wrapped = [&field](double t, const OdeState& w) { return OdeState{field(t, w[0])}; };
  return ode_solve(wrapped, t0, OdeState{w0}, T, h);
}

double fit_order(const std::vector<double>& eps_list, const std::vector<double>& errors) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < eps_list.size() && i < errors.size(); ++i) {
    if (!std::isfinite(errors[i]) || errors[i] <= kNoiseFloor) continue;
    const double x = std::log(eps_list[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / denom;
}

LimitStudy riccati_limit_study(Complex a_tilde, Complex w0, double T,
                               const std::vector<double>& eps_list) {
  check_eps_list(eps_list, T);
  LimitStudy s;
  s.kind = "riccati";
  s.eps_list = eps_list;
  s.T = T;
  s.coefficient = a_tilde;
  const OdeField field = [a_tilde](double, const OdeState& w) { return OdeState{w[0] * w[0] + a_tilde}; };
  for (double eps : eps_list) {
    const int steps = lattice_steps(T, eps);
    const LatticeReference ref = lattice_reference(field, {w0}, eps, steps, kFineStep);
    if (ref.traj.blew_up()) s.blow_up = true;
    Complex w = w0;
    double err = 0.0;
    bool flagged = false;
    for (int m = 1; m <= steps; ++m) {
      const Complex den = 1.0 - eps * w;
      if (std::abs(den) <= 1e-14 * (1.0 + std::abs(eps * w))) {
        flagged = true;
        break;
      }
      w = (w + eps * a_tilde) / den;
      if (!ref.has(m)) break;
      err = std::max(err, std::abs(w - ref.at(m)[0]));
    }
    s.flagged.push_back(flagged);
    s.errors.push_back(flagged ? std::numeric_limits<double>::infinity() : err);
  }
  finish(s);
  return s;
}

double qrt_relation_residual(Complex k, double eps, Complex w, Complex w_next) {
  const JacobiValues e = jacobi_sn_cn_dn(eps, k);
  const Complex s2 = e.sn * e.sn;
  const Complex lhs = (w_next - w) * (w_next - w) / s2;
  const Complex quartic = k * k * w_next * w_next * w * w;
  const Complex middle = (2.0 * e.cn * e.dn - 2.0) / s2 * w_next * w;
  const double scale = std::abs(lhs) + std::abs(quartic) + std::abs(middle) + 1.0;
  return std::abs(lhs - quartic - middle - 1.0) / scale;
}

Complex qrt_limit_coefficient(Complex k, double eps) {
  const JacobiValues e = jacobi_sn_cn_dn(eps, k);
  return (2.0 * e.cn * e.dn - 2.0) / (e.sn * e.sn);
}

LimitStudy qrt_limit_study(Complex k, const std::vector<double>& eps_list, double T, Complex c0) {
  check_eps_list(eps_list, T);
  LimitStudy s;
  s.kind = "qrt";
  s.eps_list = eps_list;
  s.T = T;
  const JacobiValues start = jacobi_sn_cn_dn(c0, k);
  if (start.pole) throw ParameterError("qrt_limit_study: c0 sits on a pole of sn");
  const Complex k2 = k * k;
  const OdeField field = [k2](double, const OdeState& w) {
    return OdeState{w[1], 2.0 * k2 * w[0] * w[0] * w[0] - (1.0 + k2) * w[0]};
  };
  for (double eps : eps_list) {
    const int steps = lattice_steps(T, eps);
    std::vector<Complex> samples;
    bool flagged = false;
    for (int m = 0; m <= steps; ++m) {
      const JacobiValues j = jacobi_sn_cn_dn(eps * m + c0, k);
      if (j.pole) {
        flagged = true;
        break;
      }
      samples.push_back(j.sn);
    }
    double rel = 0.0;
    for (std::size_t m = 0; m + 1 < samples.size(); ++m)
      rel = std::max(rel, qrt_relation_residual(k, eps, samples[m], samples[m + 1]));
    s.relation_residuals.push_back(rel);

    // RK4 with step eps: the error is the integrator's own
    const Trajectory tr = ode_solve(field, 0.0, {start.sn, start.cn * start.dn}, eps * steps, eps);
    if (tr.blew_up()) s.blow_up = true;
    double err = 0.0;
    for (std::size_t m = 0; m < samples.size() && m < tr.node_count(); ++m)
      err = std::max(err, std::abs(tr.node(m)[0] - samples[m]));
    s.flagged.push_back(flagged);
    s.errors.push_back(flagged ? std::numeric_limits<double>::infinity() : err);
  }
  finish(s);
  return s;
}

namespace {

void check_degenerate(const DegenerateParams& p) {
  if (std::abs(p.a_tau2) == 0.0) throw ParameterError("degenerate_limit_study: a tau2^2 = 0");
  if (std::abs(p.tau2_sq) == 0.0) throw ParameterError("degenerate_limit_study: tau2^2 = 0");
  if (!(p.T > 0.0)) throw ParameterError("degenerate_limit_study: window T must be positive");
}

Complex degenerate_slope(const DegenerateParams& p) {
  const Complex c = -p.a_tau2;
  return (p.direction >= 0 ? 1.0 : -1.0) * std::sqrt(c * (p.f0 * p.f0 - 1.0 / p.tau2_sq));
}

bool at_equilibrium(const DegenerateParams& p) {
  const Complex inv = 1.0 / p.tau2_sq;
  return std::abs(p.f0 * p.f0 - inv) <= 1e-14 * (std::abs(p.f0 * p.f0) + std::abs(inv));
}

}  // namespace

DegenerateOrbit degenerate_discrete_orbit(const DegenerateParams& p, double eps) {
  check_degenerate(p);
  if (!(eps > 0.0)) throw ParameterError("degenerate_discrete_orbit: eps must be positive");
  const Complex e2c = -eps * eps * p.a_tau2;
  const Complex inv = 1.0 / p.tau2_sq;
  const Complex slope0 = degenerate_slope(p);
  const int steps = lattice_steps(p.T, eps);
  DegenerateOrbit out;
  out.f.push_back(p.f0);
  auto& f = out.f;
  for (int m = 0; m < steps; ++m) {
    const Complex cur = f.back();
    // f_next^2 - (2 + eps^2 c) cur f_next + (cur^2 + eps^2 c / tau2^2) = 0
    const Complex b = (2.0 + e2c) * cur;
    const Complex q = cur * cur + e2c * inv;
    const Complex sq = std::sqrt(b * b - 4.0 * q);
    const Complex r1 = std::abs(b + sq) >= std::abs(b - sq) ? 0.5 * (b + sq) : 0.5 * (b - sq);
    const Complex r2 = r1 == Complex(0.0) ? Complex(0.0) : q / r1;
    Complex guess;
    if (f.size() >= 3)
      guess = 3.0 * f[f.size() - 1] - 3.0 * f[f.size() - 2] + f[f.size() - 3];
    else if (f.size() == 2)
      guess = 2.0 * f[1] - f[0];
    else
      guess = p.f0 + eps * slope0;
    const double d1 = std::abs(r1 - guess), d2 = std::abs(r2 - guess);
    const double spread = std::abs(r1 - r2);
    if (spread > 1e-14 * (1.0 + std::abs(r1)) && std::abs(d1 - d2) <= 1e-12 * spread)
      out.flagged = true;
    f.push_back(d1 <= d2 ? r1 : r2);
  }
  return out;
}

LimitStudy degenerate_limit_study(const DegenerateParams& p, const std::vector<double>& eps_list) {
  check_degenerate(p);
  check_eps_list(eps_list, p.T);
  LimitStudy s;
  s.kind = "degenerate";
  s.eps_list = eps_list;
  s.T = p.T;
  const Complex c = -p.a_tau2;
  const OdeField field = at_equilibrium(p)
                             ? OdeField([](double, const OdeState&) { return OdeState{0.0, 0.0}; })
                             : OdeField([c](double, const OdeState& w) { return OdeState{w[1], c * w[0]}; });
  for (double eps : eps_list) {
    const DegenerateOrbit orb = degenerate_discrete_orbit(p, eps);
    const int steps = static_cast<int>(orb.f.size()) - 1;
    const LatticeReference ref =
        lattice_reference(field, {p.f0, degenerate_slope(p)}, eps, steps, kFineStep);
    if (ref.traj.blew_up()) s.blow_up = true;
    double err = 0.0;
    for (int m = 1; m <= steps && ref.has(m); ++m)
      err = std::max(err, std::abs(orb.f[static_cast<std::size_t>(m)] - ref.at(m)[0]));
    s.flagged.push_back(orb.flagged);
    s.errors.push_back(err);
  }
  finish(s);
  return s;
}

LimitStudy riccati_limit_eq10(Complex delta, Complex gamma0, double T,
                              const std::vector<double>& eps_list) {
  if (std::abs(2.0 * delta * delta - 1.0) <= 1e-12)
    throw ParameterError("riccati_limit_eq10: requires 2 delta^2 != 1");
  const Eq10Factorization fac = factor_eq10_to_riccati(delta);
  const CanonicalRiccati can = canonicalize_riccati(fac.factors.front().b);
  const SpherePoint w0 = can.T.inverse()(gamma0);
  if (w0.is_infinite()) throw ParameterError("riccati_limit_eq10: gamma0 maps to infinity");
  LimitStudy s = riccati_limit_study(can.A, w0.value(), T, eps_list);
  s.kind = "eq10";
  return s;
}

std::vector<double> dyadic_eps(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, -e));
  return out;
}

}  // namespace malmquist
