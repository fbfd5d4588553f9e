#pragma once

#include <functional>
#include <string>
#include <vector>

#include "malmquist/complex.hpp"

namespace malmquist {

using OdeState = std::vector<Complex>;
using OdeField = std::function<OdeState(double t, const OdeState& w)>;
using ScalarField = std::function<Complex(double t, Complex w)>;

inline constexpr double kBlowUp = 1e12;

/// Fixed-step RK4 trajectory with cubic Hermite dense output.
class Trajectory {
 public:
  /// Interpolated component `index` at time t in [t0, t_end].
  Complex operator()(double t, std::size_t index = 0) const;
  const OdeState& node(std::size_t i) const { return states_[i]; }
  std::size_t node_count() const { return states_.size(); }
  double node_time(std::size_t i) const { return t0_ + h_ * static_cast<double>(i); }
  double t_end() const { return node_time(states_.size() - 1); }
  double step() const { return h_; }
  /// |w| exceeded kBlowUp or became non-finite; the trajectory stops there.
  bool blew_up() const { return blew_up_; }

 private:
  friend Trajectory ode_solve(const OdeField&, double, OdeState, double, double);
  double t0_ = 0.0;
  double h_ = 0.0;
  bool blew_up_ = false;
  std::vector<OdeState> states_;
  std::vector<OdeState> slopes_;
};

/// Integrates w' = field(t, w) over [t0, t0 + T]. The step is shrunk to
/// T / ceil(T / h) so the last node lands on t0 + T.
Trajectory ode_solve(const OdeField& field, double t0, OdeState w0, double T, double h);
Trajectory ode_solve(const ScalarField& field, double t0, Complex w0, double T, double h);

/// Discrete-vs-continuum error table for a list of lattice spacings.
struct LimitStudy {
  std::string kind;
  std::vector<double> eps_list;  // strictly decreasing
  std::vector<double> errors;    // sup over the window; infinity when flagged
  std::vector<bool> flagged;     // discrete pole or ambiguous root selection
  std::vector<double> relation_residuals;  // qrt study only
  double fitted_order = 0.0;     // NaN when fewer than two usable points
  double t0 = 0.0;
  double T = 0.0;
  bool blow_up = false;          // reference solution blew up inside the window
  Complex coefficient = 0.0;     // Riccati A used by the eq10 pipeline
};

/// Least-squares slope of log(error) vs log(eps) over finite errors > 1e-13.
double fit_order(const std::vector<double>& eps_list, const std::vector<double>& errors);

/// w(t + eps) = (w + eps A) / (1 - eps w) against w' = w^2 + A.
LimitStudy riccati_limit_study(Complex a_tilde, Complex w0, double T,
                               const std::vector<double>& eps_list);

/// Samples sn(m eps + c0, k) against RK4 with step eps on
/// w'' = 2 k^2 w^3 - (1 + k^2) w (the differentiated square-root ODE);
/// also records the scaled-relation residual at each eps.
LimitStudy qrt_limit_study(Complex k, const std::vector<double>& eps_list, double T, Complex c0);

/// Residual of the scaled symmetric relation between w = w(t) and
/// w_next = w(t + eps), relative to the size of its terms.
double qrt_relation_residual(Complex k, double eps, Complex w, Complex w_next);

/// (2 cn eps dn eps - 2) / sn^2 eps, which tends to -(1 + k^2).
Complex qrt_limit_coefficient(Complex k, double eps);

struct DegenerateParams {
  Complex a_tau2;   // a tau2^2, must be nonzero
  Complex tau2_sq;  // tau2^2
  Complex f0;
  double T = 1.0;
  int direction = +1;  // sign of w'(0)
};

struct DegenerateOrbit {
  std::vector<Complex> f;  // f_0 .. f_N at t = m eps
  bool flagged = false;    // some step had two equidistant candidate roots
};

/// Lattice orbit of the scaled degenerate recurrence over the window.
DegenerateOrbit degenerate_discrete_orbit(const DegenerateParams& p, double eps);

/// (f(z+1) - f)^2 = eps^2 c (f(z+1) f - 1/tau2^2), c = -a tau2^2, stepped by
/// taking the root nearest an extrapolated prediction, against
/// (w')^2 = c (w^2 - 1/tau2^2). Away from the equilibria w^2 = 1/tau2^2 the
/// reference solves w'' = c w; starting on an equilibrium it stays there.
LimitStudy degenerate_limit_study(const DegenerateParams& p, const std::vector<double>& eps_list);

/// Worked E10 Riccati factor -> canonical A -> riccati_limit_study with
/// w0 = T^-1(gamma0). Requires 2 delta^2 != 1.
LimitStudy riccati_limit_eq10(Complex delta, Complex gamma0, double T,
                              const std::vector<double>& eps_list);

/// 2^-lo .. 2^-hi
std::vector<double> dyadic_eps(int lo, int hi);

}  // namespace malmquist
