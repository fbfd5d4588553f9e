#include "malmquist/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "malmquist/elliptic.hpp"

namespace malmquist {

namespace {

const Complex kI(0.0, 1.0);

std::vector<EquationInfo> build_registry() {
  std::vector<EquationInfo> r;
  r.push_back({EquationId::E6, 1, "f(z+1) = a1 f + a2", {"a1", "a2"}, {"a1 != 0"},
               "a1=0.5 a2=1", {"linear step; iterated as a degree-1 map"}});
  r.push_back({EquationId::E7, 1, "f(z+1) = (b1 f + b2) / (f + b3)", {"b1", "b2", "b3"},
               {"b2 != b1 b3"}, "b1=2 b2=1 b3=1",
               {"Riccati step; canonical form f(z+1) - f = f(z+1) f + A"}});
  r.push_back({EquationId::E9, 2, "f(z+1)^2 = 1 - f^2", {}, {}, "no parameters",
               {"sin(pi z / 2 + c) is a solution"}});
  r.push_back({EquationId::E10, 2, "f(z+1)^2 = 1 - ((delta f - 1) / (f - delta))^2", {"delta"},
               {"delta != +-1", "2 delta^2 != 1"}, "delta=0.3",
               {"delta restricted to a constant",
                "factors into four difference Riccati equations for gamma, f = (gamma + 1/gamma)/2"}});
  r.push_back({EquationId::E11, 2, "f(z+1)^2 = 1 - ((f + 3) / (f - 1))^2", {}, {}, "no parameters",
               {"lifts from a Riccati step for gamma via f = (8 gamma^2 - (gamma^2+1)^2) / (gamma^2+1)^2"}});
  r.push_back({EquationId::E12, 2, "f(z+1)^2 = (f^2 - kappa^2) / (f^2 - 1)", {"kappa"},
               {"kappa^2 != 0, 1"}, "kappa=2",
               {"symmetric QRT curve x^2 y^2 - x^2 - y^2 + kappa^2 = 0",
                "solved by sn after rescale and f -> alpha (f - beta)/(f + beta), alpha^4 = kappa2^2"}});
  r.push_back({EquationId::E13, 3, "f(z+1)^3 = 1 - f^-3", {}, {}, "no parameters",
               {"pullback of f(z+1)^3 = 1 - f^3 under f -> 1/f on the right-hand side"}});
  r.push_back({EquationId::E14, 2, "f(z+1)^2 = eta^2 (f^2 - 1)", {"eta"},
               {"eta^3 = 1", "eta != 1"}, "eta=exp:1/3",
               {"H-substitution: (f + i eta)/(f - i eta) = h^2, H = (h^2 + 1)/(2h)",
                "curve f(z+1)^2 H^2 - (f(z+1)^2 + H^2) - eta^2 = 0"}});
  r.push_back({EquationId::E15, 2, "f(z+1)^2 = 2 (1 - f^-2)", {}, {}, "no parameters", {}});
  r.push_back({EquationId::E16, 2, "f(z+1)^2 = (1 + f^2) / (1 - f^2)", {}, {}, "no parameters", {}});
  r.push_back({EquationId::E17, 2,
               "f(z+1)^2 = theta (f^2 - kappa1 f + 1) / (f^2 + kappa1 f + 1)", {"theta", "kappa1"},
               {"theta in {+1, -1}",
                "kappa1^2 (kappa1^2 - 4) = 2 (1 - theta) kappa1^2 - 8 (1 + theta)", "kappa1 != 0"},
               "theta=-1 kappa1=2.8284271247461903 (see: constants E17)",
               {"gamma1^2 = gamma2^2 = c^2 = 1 (recorded, not re-derived)",
                "d = delta + 1/delta satisfies d^2 (d^2 - 4) = 2 (1 - c) d^2 - 8 (1 + c)",
                "which kappa1 sign pairs with which solution family is not fixed"}});
  r.push_back({EquationId::E18, 3, "f(z+1)^3 = 1 - f^3", {}, {}, "no parameters", {}});
  r.push_back({EquationId::E19, 2,
               "f(z+1)^2 = (1/2) (1 + delta)^2 / (1 + delta^2) (f - 1)(f - delta^2) / (f - delta)^2",
               {"delta"},
               {"8 delta^5 (delta^2 + 1) - (delta + 1)^4 = 0", "delta != 0, +-1, +-i"},
               "see: constants E19",
               {"solutions have the form sn(phi(z)) with modulus 1/delta^2",
                "phi'(z0 + 1)^2 = (1/2)(1 + delta)^4 / delta^4 phi'(z0)^2 where f(z0) = 1"}});
  return r;
}

const std::vector<EquationInfo>& registry() {
  static const std::vector<EquationInfo> r = build_registry();
  return r;
}

bool near(Complex z, Complex w) { return std::abs(z - w) <= kConstraintTol; }

Complex require(const ParamMap& params, const std::string& name, EquationId id) {
  const auto it = params.find(name);
  if (it == params.end())
    throw ParameterError(std::string(to_string(id)) + ": missing parameter '" + name + "'");
  return it->second;
}

void reject_unknown(const ParamMap& params, EquationId id, const std::set<std::string>& extra = {}) {
  const auto& names = equation_info(id).params;
  for (const auto& [name, value] : params) {
    if (std::find(names.begin(), names.end(), name) != names.end() || extra.count(name)) continue;
    throw ParameterError(std::string(to_string(id)) + ": unknown parameter '" + name + "'");
  }
}

void fail(EquationId id, const std::string& relation) {
  throw ParameterError(std::string(to_string(id)) + ": constraint violated: " + relation);
}

void validate(EquationId id, const ParamMap& p) {
  switch (id) {
    case EquationId::E6:
      if (near(require(p, "a1", id), 0.0)) fail(id, "a1 != 0");
      require(p, "a2", id);
      break;
    case EquationId::E7: {
      const Complex b1 = require(p, "b1", id), b2 = require(p, "b2", id), b3 = require(p, "b3", id);
      if (std::abs(b2 - b1 * b3) <= 1e-12 * (1.0 + std::abs(b2) + std::abs(b1 * b3)))
        fail(id, "b2 != b1 b3");
      break;
    }
    case EquationId::E10: {
      const Complex d = require(p, "delta", id);
      if (near(d, 1.0) || near(d, -1.0)) fail(id, "delta != +-1");
      if (near(2.0 * d * d, 1.0)) fail(id, "2 delta^2 != 1");
      break;
    }
    case EquationId::E12: {
      const Complex k2 = std::pow(require(p, "kappa", id), 2);
      if (near(k2, 0.0) || near(k2, 1.0)) fail(id, "kappa^2 != 0, 1");
      break;
    }
    case EquationId::E14: {
      const Complex eta = require(p, "eta", id);
      if (constraint_residual(id, p) >= kConstraintTol) fail(id, "eta^3 = 1");
      if (near(eta, 1.0)) fail(id, "eta != 1");
      break;
    }
    case EquationId::E17: {
      const Complex theta = require(p, "theta", id);
      const Complex k1 = require(p, "kappa1", id);
      if (!near(theta, 1.0) && !near(theta, -1.0)) fail(id, "theta in {+1, -1}");
      if (near(k1, 0.0)) fail(id, "kappa1 != 0");
      if (constraint_residual(id, p) >= kConstraintTol)
        fail(id, "kappa1^2 (kappa1^2 - 4) = 2 (1 - theta) kappa1^2 - 8 (1 + theta)");
      break;
    }
    case EquationId::E19: {
      const Complex d = require(p, "delta", id);
      for (Complex bad : {Complex(0.0), Complex(1.0), Complex(-1.0), kI, -kI})
        if (near(d, bad)) fail(id, "delta != 0, +-1, +-i");
      if (constraint_residual(id, p) >= kConstraintTol)
        fail(id, "8 delta^5 (delta^2 + 1) - (delta + 1)^4 = 0");
      break;
    }
    default:
      break;
  }
}

RationalMap materialize(EquationId id, const ParamMap& p) {
  const Polynomial one({1.0});
  switch (id) {
    case EquationId::E6:
      return {Polynomial({p.at("a2"), p.at("a1")}), one};
    case EquationId::E7:
      return {Polynomial({p.at("b2"), p.at("b1")}), Polynomial({p.at("b3"), 1.0})};
    case EquationId::E9:
      return {Polynomial({1.0, 0.0, -1.0}), one};
    case EquationId::E10: {
      const Complex d = p.at("delta");
      const Polynomial a({-d, 1.0});       // f - delta
      const Polynomial b({-1.0, d});       // delta f - 1
      return {a * a - b * b, a * a};
    }
    case EquationId::E11:
      return {Polynomial({-8.0, -8.0}), Polynomial({1.0, -2.0, 1.0})};
    case EquationId::E12: {
      const Complex k = p.at("kappa");
      return {Polynomial({-k * k, 0.0, 1.0}), Polynomial({-1.0, 0.0, 1.0})};
    }
    case EquationId::E13:
      return {Polynomial({-1.0, 0.0, 0.0, 1.0}), Polynomial::monomial(1.0, 3)};
    case EquationId::E14: {
      const Complex e2 = std::pow(p.at("eta"), 2);
      return {Polynomial({-e2, 0.0, e2}), one};
    }
    case EquationId::E15:
      return {Polynomial({-2.0, 0.0, 2.0}), Polynomial::monomial(1.0, 2)};
    case EquationId::E16:
      return {Polynomial({1.0, 0.0, 1.0}), Polynomial({1.0, 0.0, -1.0})};
    case EquationId::E17: {
      const Complex t = p.at("theta"), k1 = p.at("kappa1");
      return {t * Polynomial({1.0, -k1, 1.0}), Polynomial({1.0, k1, 1.0})};
    }
    case EquationId::E18:
      return {Polynomial({1.0, 0.0, 0.0, -1.0}), one};
    case EquationId::E19: {
      const Complex d = p.at("delta");
      const Complex lead = e19_necessary_form(d).leading_factor;
      const Polynomial g({-d, 1.0});
      return {lead * (Polynomial({-1.0, 1.0}) * Polynomial({-d * d, 1.0})), g * g};
    }
  }
  throw ParameterError("catalog: unknown equation id");
}

Complex newton_polish(const Polynomial& p, Complex z) {
  const Polynomial dp = p.derivative();
  for (int i = 0; i < 5; ++i) {
    const Complex d = dp(z);
    if (d == Complex(0.0)) break;
    const Complex step = p(z) / d;
    z -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
  }
  return z;
}

class SineSolution : public ExactSolution {
 public:
  explicit SineSolution(Complex c) : ExactSolution(EquationId::E9), c_(c) {}
  SpherePoint operator()(int z) const override {
    // exact zeros and units at integer z when c = 0
    if (c_ == Complex(0.0)) {
      static constexpr double table[4] = {0.0, 1.0, 0.0, -1.0};
      return table[((z % 4) + 4) % 4];
    }
    return std::sin(0.5 * kPi * static_cast<double>(z) + c_);
  }

 private:
  Complex c_;
};

class EllipticE12Solution : public ExactSolution {
 public:
  EllipticE12Solution(const E12Pipeline& pipe, Complex c)
      : ExactSolution(EquationId::E12),
        pipe_(pipe),
        c_(c),
        t_(pipe.alpha, -pipe.alpha * pipe.beta, 1.0, pipe.beta) {}
  SpherePoint operator()(int z) const override {
    const Complex k = pipe_.param.k;
    const JacobiValues j = jacobi_sn_cn_dn(pipe_.param.eps * static_cast<double>(z) + c_, k);
    SpherePoint w = SpherePoint::infinity();
    if (!j.pole && std::abs(j.sn) <= 1e12) w = std::sqrt(k) * j.sn;
    const SpherePoint g = t_(w);
    if (g.is_infinite() || std::abs(g.value()) > 1e12) return SpherePoint::infinity();
    return g.value() / pipe_.kappa1;
  }

 private:
  E12Pipeline pipe_;
  Complex c_;
  MobiusMap t_;
};

Complex optional_param(const ParamMap& p, const std::string& name, Complex fallback) {
  const auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

std::string_view to_string(EquationId id) {
  switch (id) {
    case EquationId::E6: return "E6";
    case EquationId::E7: return "E7";
    case EquationId::E9: return "E9";
    case EquationId::E10: return "E10";
    case EquationId::E11: return "E11";
    case EquationId::E12: return "E12";
    case EquationId::E13: return "E13";
    case EquationId::E14: return "E14";
    case EquationId::E15: return "E15";
    case EquationId::E16: return "E16";
    case EquationId::E17: return "E17";
    case EquationId::E18: return "E18";
    case EquationId::E19: return "E19";
  }
  return "?";
}

std::optional<EquationId> parse_equation_id(std::string_view text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (t == "LINEAR") return EquationId::E6;
  if (t == "RICCATI") return EquationId::E7;
  if (!t.empty() && t[0] != 'E') t = "E" + t;
  for (EquationId id : kAllEquations)
    if (to_string(id) == t) return id;
  return std::nullopt;
}

const EquationInfo& equation_info(EquationId id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw ParameterError("catalog: unknown equation id");
}

CanonicalEquation catalog_get(EquationId id, const ParamMap& params) {
  reject_unknown(params, id);
  validate(id, params);
  return {id, equation_info(id).n, materialize(id, params), params};
}

double constraint_residual(EquationId id, const ParamMap& params) {
  switch (id) {
    case EquationId::E14:
      return std::abs(std::pow(require(params, "eta", id), 3) - 1.0);
    case EquationId::E17: {
      const Complex t = require(params, "theta", id);
      const Complex s = std::pow(require(params, "kappa1", id), 2);
      return std::abs(s * (s - 4.0) - 2.0 * (1.0 - t) * s + 8.0 * (1.0 + t));
    }
    case EquationId::E19: {
      const Complex d = require(params, "delta", id);
      return std::abs(8.0 * std::pow(d, 5) * (d * d + 1.0) - std::pow(d + 1.0, 4));
    }
    default:
      return 0.0;
  }
}

Polynomial e19_polynomial() {
  // 8 d^7 + 8 d^5 - (d^4 + 4 d^3 + 6 d^2 + 4 d + 1)
  return Polynomial({-1.0, -4.0, -6.0, -4.0, -1.0, 8.0, 0.0, 8.0});
}

std::vector<ConstraintSolution> solve_constraints(EquationId id, std::optional<int> theta) {
  std::vector<ConstraintSolution> out;
  if (id == EquationId::E17) {
    std::vector<int> thetas;
    if (theta) {
      if (*theta != 1 && *theta != -1) throw ParameterError("E17: theta must be +1 or -1");
      thetas.push_back(*theta);
    } else {
      thetas = {-1, 1};
    }
    for (int t : thetas) {
      // quadratic in s = kappa1^2: s^2 - (4 + 2(1 - t)) s + 8 (1 + t)
      const double mid = 4.0 + 2.0 * (1.0 - t);
      const double c0 = 8.0 * (1.0 + t);
      const Polynomial quartic({c0, 0.0, -mid, 0.0, 1.0});
      std::vector<Complex> kappas;
      for (Complex s : poly_roots(Polynomial({c0, -mid, 1.0}))) {
        if (std::abs(s) < 1e-12) continue;  // kappa1 = 0 would make R constant
        const Complex r = std::sqrt(s);
        kappas.push_back(newton_polish(quartic, r));
        kappas.push_back(newton_polish(quartic, -r));
      }
      std::sort(kappas.begin(), kappas.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      for (Complex k1 : kappas) {
        ParamMap p{{"theta", static_cast<double>(t)}, {"kappa1", k1}};
        out.push_back({p, constraint_residual(id, p)});
      }
    }
    return out;
  }
  if (id == EquationId::E19) {
    const Polynomial p = e19_polynomial();
    for (Complex r : poly_roots(p.deflate(1.0))) {
      const Complex d = newton_polish(p, r);
      bool excluded = false;
      for (Complex bad : {Complex(0.0), Complex(1.0), Complex(-1.0), kI, -kI})
        if (near(d, bad)) excluded = true;
      if (excluded) continue;
      ParamMap params{{"delta", d}};
      out.push_back({params, constraint_residual(id, params)});
    }
    return out;
  }
  throw ParameterError(std::string(to_string(id)) + ": no constraint");
}

AssociatedCurve associated_curve(EquationId id, const ParamMap& params) {
  switch (id) {
    case EquationId::E14: {
      const CanonicalEquation eq = catalog_get(id, params);
      Matrix3c c{};
      c[0][0] = 1.0;
      c[0][2] = -1.0;
      c[2][0] = -1.0;
      c[2][2] = -std::pow(eq.params.at("eta"), 2);
      return {Biquadratic(c), CurveKind::HChain};
    }
    case EquationId::E9:
    case EquationId::E12:
    case EquationId::E15:
    case EquationId::E16:
    case EquationId::E17:
    case EquationId::E19: {
      // f(z+1)^2 den(f) - num(f) = 0 with x = f(z+1), y = f
      const CanonicalEquation eq = catalog_get(id, params);
      Matrix3c c{};
      for (int j = 0; j < 3; ++j) {
        c[0][static_cast<std::size_t>(j)] = eq.R.den().coeff(2 - j);
        c[2][static_cast<std::size_t>(j)] = -eq.R.num().coeff(2 - j);
      }
      return {Biquadratic(c), CurveKind::Self};
    }
    default:
      throw ParameterError(std::string(to_string(id)) + ": no biquadratic registered");
  }
}

Orbit ExactSolution::orbit(int m_count) const {
  if (m_count < 1) throw ParameterError("exact solution: m_count must be >= 1");
  Orbit orb;
  orb.eq_id = id_;
  for (int m = 0; m < m_count; ++m) {
    const SpherePoint v = (*this)(m);
    orb.values.push_back(v);
    orb.singular.push_back(v.is_infinite());
    if (m > 0) orb.branches.push_back(-1);
  }
  return orb;
}

E12Pipeline e12_pipeline(Complex kappa, Complex kappa1) {
  if (near(kappa1, 0.0)) throw ParameterError("E12: rescale constant kappa1 must be nonzero");
  const Complex k1sq = kappa1 * kappa1;
  const Complex kappa2 = k1sq * kappa;  // kappa2^2 = kappa1^4 kappa^2
  const Complex alpha = std::sqrt(kappa2);  // alpha^4 = kappa2^2
  const Complex beta = 1.0;

  Matrix3c m{};
  m[0][0] = 1.0;
  m[0][2] = -k1sq;
  m[2][0] = -k1sq;
  m[2][2] = kappa2 * kappa2;
  const MobiusMap t(alpha, -alpha * beta, 1.0, beta);
  const Biquadratic moved = mobius_transform_biquadratic(Biquadratic(m), t, t);
  const Complex lead = moved(0, 0);
  if (std::abs(lead) < 1e-12) throw ParameterError("E12: transformed curve lost its x^2 y^2 term");
  constexpr std::array<std::pair<int, int>, 4> odd{{{0, 1}, {1, 0}, {1, 2}, {2, 1}}};
  for (auto [i, j] : odd)
    if (std::abs(moved(i, j)) > 1e-10 * std::abs(lead))
      throw ParameterError("E12: transformed curve is not in canonical form");
  if (std::abs(moved(2, 2) / lead - 1.0) > 1e-10)
    throw ParameterError("E12: transformed curve is not in canonical form");

  E12Pipeline pipe{kappa1, alpha, beta, {moved(0, 2) / lead, 0.5 * moved(1, 1) / lead}, {}};
  pipe.param = parametrize_symmetric(pipe.canonical);
  return pipe;
}

std::unique_ptr<ExactSolution> exact_solution(EquationId id, const ParamMap& params) {
  switch (id) {
    case EquationId::E9:
      reject_unknown(params, id, {"c"});
      return std::make_unique<SineSolution>(optional_param(params, "c", 0.0));
    case EquationId::E12: {
      reject_unknown(params, id, {"c", "kappa1"});
      ParamMap core{{"kappa", require(params, "kappa", id)}};
      validate(id, core);
      const E12Pipeline pipe = e12_pipeline(core.at("kappa"), optional_param(params, "kappa1", 1.0));
      return std::make_unique<EllipticE12Solution>(pipe, optional_param(params, "c", 0.0));
    }
    default:
      throw ParameterError(std::string(to_string(id)) + ": no constructor registered");
  }
}

E19NecessaryForm e19_necessary_form(Complex delta) {
  const Complex d2 = delta * delta;
  if (near(d2, 0.0) || near(d2, -1.0)) throw ParameterError("E19: delta != 0, +-i");
  return {1.0 / d2, 0.5 * std::pow(1.0 + delta, 4) / (d2 * d2),
          0.5 * std::pow(1.0 + delta, 2) / (1.0 + d2)};
}

}  // namespace malmquist
