#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "malmquist/orbit_data.hpp"
#include "malmquist/qrt.hpp"
#include "malmquist/rational_map.hpp"

namespace malmquist {

using ParamMap = std::map<std::string, Complex>;

/// Absolute tolerance on the defining relation of a registered instance.
inline constexpr double kConstraintTol = 1e-9;

/// Static description of a registry entry (no parameters bound).
struct EquationInfo {
  EquationId id;
  int n;
  std::string formula;                  // f(z+1)^n = ...
  std::vector<std::string> params;      // required parameter names
  std::vector<std::string> constraints; // human-readable relations and exclusions
  std::string hint;                     // admissible values that work out of the box
  std::vector<std::string> metadata;    // recorded relations that are not re-derived
};

const EquationInfo& equation_info(EquationId id);

/// A validated instance: f(z+1)^n = R(f(z)).
struct CanonicalEquation {
  EquationId id;
  int n;
  RationalMap R;
  ParamMap params;
};

/// Validates params (missing or unknown names, exclusions, constraints) and
/// materializes R. Violations raise ParameterError naming the relation.
CanonicalEquation catalog_get(EquationId id, const ParamMap& params);

/// |lhs - rhs| of the defining relation (0 for unconstrained ids). Missing
/// parameters raise ParameterError.
double constraint_residual(EquationId id, const ParamMap& params);

struct ConstraintSolution {
  ParamMap params;
  double residual;
};

/// E17: every admissible kappa1 for the requested theta (both when empty).
/// E19: the six roots left after removing delta = 1; exclusions filtered.
std::vector<ConstraintSolution> solve_constraints(EquationId id,
                                                  std::optional<int> theta = std::nullopt);

/// E19 polynomial 8 d^7 + 8 d^5 - (d + 1)^4 (ascending coefficients).
Polynomial e19_polynomial();

enum class CurveKind { Self, HChain };

/// SELF curves relate (x, y) = (f(z+1), f(z)); the H_CHAIN curve relates
/// (f(z+1), H(z)).
struct AssociatedCurve {
  Biquadratic curve;
  CurveKind kind;
};

AssociatedCurve associated_curve(EquationId id, const ParamMap& params);

/// Closed-form lattice solution z -> f(z) for E9 and E12.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;
  virtual SpherePoint operator()(int z) const = 0;
  /// Samples z = 0 .. m_count-1 with singular flags at poles.
  Orbit orbit(int m_count) const;
  EquationId id() const { return id_; }

 protected:
  explicit ExactSolution(EquationId id) : id_(id) {}

 private:
  EquationId id_;
};

/// E9: sin(pi z / 2 + c). E12: elliptic parametrization pulled back through
/// the rescale and Moebius maps. Optional parameter "c" shifts the phase
/// (default 0); E12 also accepts "kappa1" (default 1).
std::unique_ptr<ExactSolution> exact_solution(EquationId id, const ParamMap& params);

/// Intermediate data of the E12 pipeline.
struct E12Pipeline {
  Complex kappa1;
  Complex alpha;
  Complex beta;
  SymmetricQRTParams canonical;
  SymmetricParametrization param;
};

E12Pipeline e12_pipeline(Complex kappa, Complex kappa1 = 1.0);

/// What is known about E19 solutions: f = sn(phi(z)) with modulus 1/delta^2
/// and phi'(z0 + 1)^2 = multiplier * phi'(z0)^2 at points where f(z0) = 1.
struct E19NecessaryForm {
  Complex modulus;
  Complex multiplier;
  Complex leading_factor;  // (1/2)(1 + delta)^2 / (1 + delta^2)
};

E19NecessaryForm e19_necessary_form(Complex delta);

}  // namespace malmquist
