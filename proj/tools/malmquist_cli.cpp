#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "malmquist/acceptance.hpp"
#include "malmquist/catalog.hpp"
#include "malmquist/continuum.hpp"
#include "malmquist/io.hpp"
#include "malmquist/orbit.hpp"
#include "malmquist/riccati.hpp"

using namespace malmquist;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kBadParams = 2, kIterFail = 3, kFitFail = 4, kBlowUp = 5 };

struct Globals {
  std::string format;  // empty: per-command default
  std::string out;
  double tol = 1e-8;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw ParameterError("cannot open output file '" + g.out + "'");
  f << text;
}

// Summary lines go to stdout when the document went to a file, else stderr.
std::ostream& summary(const Globals& g) { return g.out.empty() ? std::cerr : std::cout; }

std::string fmt_c(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

EquationId require_id(const std::string& text) {
  const auto id = parse_equation_id(text);
  if (!id) throw ParameterError("unknown equation id '" + text + "'");
  return *id;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParameterError("parameter must be name=value, got '" + item + "'");
    p[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
  }
  return p;
}

BranchPolicy parse_policy(const std::string& text) {
  if (text == "principal") return BranchPolicy::principal();
  if (text == "nearest") return BranchPolicy::nearest();
  if (text.rfind("fixed:", 0) == 0) {
    std::vector<int> seq;
    std::stringstream ss(text.substr(6));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        seq.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParameterError("bad branch index '" + tok + "'");
      }
    }
    if (seq.empty()) throw ParameterError("fixed: needs at least one branch index");
    return BranchPolicy::fixed(std::move(seq));
  }
  throw ParameterError("policy must be principal, nearest or fixed:i,j,...");
}

// "2^-4..2^-10" or "0.3,0.2,0.1"
std::vector<double> parse_eps(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    auto exponent = [&](const std::string& part) {
      if (part.rfind("2^-", 0) != 0) throw ParameterError("eps range must look like 2^-4..2^-10");
      try {
        return std::stoi(part.substr(3));
      } catch (const std::exception&) {
        throw ParameterError("bad exponent in '" + part + "'");
      }
    };
    const int lo = exponent(text.substr(0, dots)), hi = exponent(text.substr(dots + 2));
    if (hi < lo) throw ParameterError("eps range must go from coarse to fine");
    return dyadic_eps(lo, hi);
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok).real());
  return out;
}

std::pair<double, double> parse_band(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParameterError("band must be lo,hi");
  return {parse_complex(text.substr(0, comma)).real(), parse_complex(text.substr(comma + 1)).real()};
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(const Globals& g, const std::string& id_text) {
  std::vector<EquationId> ids;
  if (id_text.empty()) ids.assign(kAllEquations.begin(), kAllEquations.end());
  else ids.push_back(require_id(id_text));
  if (g.format == "json") {
    json entries = json::array();
    for (auto id : ids) entries.push_back(info_json(equation_info(id)));
    emit(g, json{{"schema_version", kSchemaVersion}, {"entries", entries}}.dump(2) + "\n");
  } else if (g.format == "csv") {
    std::ostringstream os;
    os << "id,n,formula,constraints\n";
    for (auto id : ids) {
      const auto& info = equation_info(id);
      std::string cons;
      for (const auto& c : info.constraints) cons += (cons.empty() ? "" : "; ") + c;
      os << to_string(id) << ',' << info.n << ",\"" << info.formula << "\",\"" << cons << "\"\n";
    }
    emit(g, os.str());
  } else {
    std::ostringstream os;
    for (auto id : ids) {
      const auto& info = equation_info(id);
      os << to_string(id) << "  (n = " << info.n << ")  " << info.formula << '\n';
      for (const auto& c : info.constraints) os << "    constraint: " << c << '\n';
      os << "    hint: " << info.hint << '\n';
      for (const auto& m : info.metadata) os << "    note: " << m << '\n';
    }
    emit(g, os.str());
  }
  return kOk;
}

// ---------------------------------------------------------------- orbit

int cmd_orbit(const Globals& g, const std::string& id_text, const std::vector<std::string>& params,
              const std::string& f0, int steps, const std::string& policy) {
  const CanonicalEquation eq = catalog_get(require_id(id_text), parse_params(params));
  Orbit orb = iterate(eq, parse_complex(f0), steps, parse_policy(policy));
  orb.eq_id = eq.id;
  const double res = orbit_residual(eq, orb);
  emit(g, g.format == "json" ? orbit_json(orb).dump(2) + "\n" : orbit_csv(orb));
  int poles = 0;
  for (bool s : orb.singular) poles += s;
  summary(g) << "max residual " << format_double(res) << "  points " << orb.size() << "  poles " << poles
             << '\n';
  if (static_cast<int>(orb.size()) < steps + 1) {
    std::cerr << "error: iteration stopped after " << orb.size() - 1 << " steps (pole with R(inf) = inf)\n";
    return kIterFail;
  }
  return res < g.tol ? kOk : kIterFail;
}

// ---------------------------------------------------------------- invariant

int cmd_invariant(const Globals& g, const std::vector<std::string>& inputs, const std::string& id_text,
                  const std::vector<std::string>& params, const std::vector<std::string>& f0s, int steps,
                  const std::string& policy, bool fit) {
  std::vector<Orbit> orbits;
  std::optional<EquationId> id;
  if (!id_text.empty()) id = require_id(id_text);
  const ParamMap p = parse_params(params);
  for (const auto& path : inputs) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot read orbit file '" + path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ParameterError("orbit file '" + path + "' is not JSON: " + e.what());
    }
    orbits.push_back(orbit_from_json(j));
    if (!id) id = orbits.back().eq_id;
  }
  if (!id) throw ParameterError("invariant: need --id or an orbit file carrying eq_id");
  const CanonicalEquation eq = catalog_get(*id, p);
  for (const auto& f0 : f0s) orbits.push_back(iterate(eq, parse_complex(f0), steps, parse_policy(policy)));
  if (orbits.empty()) throw ParameterError("invariant: give --in FILE or --f0 VALUE");

  json report{{"schema_version", kSchemaVersion}, {"id", std::string(to_string(*id))}, {"orbits", orbits.size()}};
  double drift = 0.0;
  std::vector<std::pair<Complex, Complex>> pairs;
  const AssociatedCurve ac = associated_curve(*id, p);
  for (const auto& orb : orbits) {
    if (ac.kind == CurveKind::HChain) {
      drift = std::max(drift, h_substitution_chain(orb, p.at("eta")).curve_residual);
    } else {
      for (const auto& [x, y] : orbit_pairs(orb)) drift = std::max(drift, curve_residual(ac.curve, x, y));
    }
    const auto more = orbit_pairs(orb);
    pairs.insert(pairs.end(), more.begin(), more.end());
  }
  report["curve"] = matrix_json(ac.curve.matrix());
  report["curve_kind"] = ac.kind == CurveKind::Self ? "SELF" : "H_CHAIN";
  report["drift"] = drift;
  if (fit) {
    const BiquadraticFit bf = fit_biquadratic(pairs);
    report["fit"] = {{"curve", matrix_json(bf.curve.matrix())},
                     {"uniqueness_gap", bf.uniqueness_gap},
                     {"max_residual", bf.max_residual},
                     {"pairs", pairs.size()}};
    if (ac.kind == CurveKind::Self) report["fit"]["cosine_distance"] = cosine_distance(bf.curve, ac.curve);
  }
  emit(g, report.dump(2) + "\n");
  summary(g) << "drift " << format_double(drift) << '\n';
  return drift < g.tol ? kOk : kIterFail;
}

// ---------------------------------------------------------------- limit

struct LimitArgs {
  std::string eps;
  double T = 0.0;
  std::string band;
  // riccati
  std::string a_tilde = "1";
  std::string w0 = "0";
  // qrt
  std::string k = "0.5";
  std::string c0 = "0.1";
  // degenerate
  std::string a_tau2 = "-1";
  std::string tau2_sq = "1";
  std::string f0 = "0";
  int direction = 1;
  // eq10
  std::string delta = "0.3";
  std::string gamma0;
};

int cmd_limit(const Globals& g, const std::string& kind, const LimitArgs& a) {
  LimitStudy s;
  std::pair<double, double> band{0.85, 1.15};
  if (kind == "riccati") {
    s = riccati_limit_study(parse_complex(a.a_tilde), parse_complex(a.w0), a.T > 0 ? a.T : 0.8,
                            parse_eps(a.eps.empty() ? "2^-4..2^-10" : a.eps));
  } else if (kind == "qrt") {
    s = qrt_limit_study(parse_complex(a.k), parse_eps(a.eps.empty() ? "0.3,0.2,0.1" : a.eps),
                        a.T > 0 ? a.T : 1.0, parse_complex(a.c0));
    band = {3.7, 4.3};
  } else if (kind == "degenerate") {
    s = degenerate_limit_study({parse_complex(a.a_tau2), parse_complex(a.tau2_sq), parse_complex(a.f0),
                                a.T > 0 ? a.T : 1.0, a.direction},
                               parse_eps(a.eps.empty() ? "2^-4..2^-9" : a.eps));
    band = {1.0, std::numeric_limits<double>::infinity()};
  } else {
    const Complex delta = parse_complex(a.delta);
    Complex gamma0;
    if (a.gamma0.empty()) {
      // default start: w0 = 0 in the canonical variable
      const auto can = canonicalize_riccati(factor_eq10_to_riccati(delta).factors.front().b);
      gamma0 = can.T(0.0).value();
    } else {
      gamma0 = parse_complex(a.gamma0);
    }
    s = riccati_limit_eq10(delta, gamma0, a.T > 0 ? a.T : 0.5, parse_eps(a.eps.empty() ? "2^-4..2^-10" : a.eps));
  }
  if (!a.band.empty()) band = parse_band(a.band);
  emit(g, g.format == "csv" ? study_csv(s) : study_json(s).dump(2) + "\n");

  auto& os = summary(g);
  os << kind << " fitted order " << format_double(s.fitted_order) << "  band [" << band.first << ", "
     << band.second << "]\n";
  if (!s.relation_residuals.empty()) {
    double worst = 0.0;
    for (double r : s.relation_residuals) worst = std::max(worst, r);
    os << "relation residual " << format_double(worst) << '\n';
    if (!(worst < g.tol)) return kIterFail;
  }
  if (s.blow_up) {
    std::cerr << "error: reference solution blew up inside the window\n";
    return kBlowUp;
  }
  bool flagged = false;
  for (bool f : s.flagged) flagged = flagged || f;
  if (flagged) os << "warning: some runs had flagged steps\n";
  if (std::isnan(s.fitted_order)) {
    // every error under the noise floor: the scheme reproduces the flow exactly
    double worst = 0.0;
    for (double e : s.errors) worst = std::max(worst, e);
    os << "max error " << format_double(worst) << " (below the fitting floor)\n";
    return worst < 1e-12 ? kOk : kIterFail;
  }
  return s.fitted_order >= band.first && s.fitted_order <= band.second ? kOk : kIterFail;
}

// ---------------------------------------------------------------- constants

int cmd_constants(const Globals& g, const std::string& id_text, std::optional<int> theta) {
  const EquationId id = require_id(id_text);
  if (id != EquationId::E17 && id != EquationId::E19)
    throw ParameterError(std::string(to_string(id)) + " has no constraint to solve (use E17 or E19)");
  const auto sols = solve_constraints(id, theta);
  if (g.format == "json") {
    json rows = json::array();
    for (const auto& s : sols) rows.push_back({{"params", params_json(s.params)}, {"residual", s.residual}});
    json doc{{"schema_version", kSchemaVersion}, {"id", std::string(to_string(id))}, {"solutions", rows}};
    if (id == EquationId::E19) doc["excluded"] = json::array({{{"delta", complex_json(1.0)}, {"reason", "delta != +-1 (deflated)"}}});
    emit(g, doc.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  const std::string name = id == EquationId::E17 ? "kappa1" : "delta";
  if (g.format == "csv") os << (id == EquationId::E17 ? "theta," : "") << name << "_re," << name << "_im,residual\n";
  for (const auto& s : sols) {
    const Complex v = s.params.at(name);
    if (g.format == "csv") {
      if (id == EquationId::E17) os << format_double(s.params.at("theta").real()) << ',';
      os << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << format_double(s.residual) << '\n';
    } else {
      if (id == EquationId::E17) os << "theta = " << s.params.at("theta").real() << "  ";
      os << name << " = " << fmt_c(v) << "  residual " << format_double(s.residual) << '\n';
    }
  }
  if (id == EquationId::E19 && g.format != "csv")
    os << "delta = 1 also solves the polynomial; excluded (delta != +-1) and deflated\n";
  emit(g, os.str());
  return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Globals& g, bool as_json, std::optional<double> elliptic_tol) {
  AcceptanceOptions opt;
  if (elliptic_tol) opt.elliptic_tol = *elliptic_tol;
  const auto results = run_acceptance(opt);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (as_json || g.format == "json") {
    json rows = json::array();
    for (const auto& r : results)
      rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    emit(g, json{{"schema_version", kSchemaVersion}, {"passed", all}, {"criteria", rows}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& r : results)
      os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": " << r.detail << '\n';
    os << (all ? "all criteria passed\n" : "some criteria failed\n");
    emit(g, os.str());
  }
  return all ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Malmquist-type difference equations: catalog, orbits, invariants, continuum limits"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Write the document to this path");
  app.add_option("--tol", g.tol, "Residual tolerance for pass/fail")->check(CLI::PositiveNumber);

  auto* catalog = app.add_subcommand("catalog", "List registered equations");
  std::string cat_id;
  catalog->add_option("--id", cat_id, "Show one entry");

  auto* orbit = app.add_subcommand("orbit", "Iterate an equation");
  std::string o_id, o_f0 = "0.3,0.2", o_policy = "nearest";
  std::vector<std::string> o_params;
  int o_steps = 50;
  orbit->add_option("--id", o_id, "Equation id")->required();
  orbit->add_option("--param", o_params, "name=re[,im]; repeatable");
  orbit->add_option("--f0", o_f0, "Initial value re[,im]");
  orbit->add_option("--steps", o_steps, "Number of steps")->check(CLI::PositiveNumber);
  orbit->add_option("--policy", o_policy, "principal | nearest | fixed:i,j,...");

  auto* inv = app.add_subcommand("invariant", "Check (and optionally fit) the invariant curve");
  std::vector<std::string> i_in, i_params, i_f0;
  std::string i_id, i_policy = "nearest";
  int i_steps = 50;
  bool i_fit = false;
  inv->add_option("--in", i_in, "Orbit JSON file; repeatable, orbits are pooled");
  inv->add_option("--id", i_id, "Equation id (default: taken from the orbit file)");
  inv->add_option("--param", i_params, "name=re[,im]; repeatable");
  inv->add_option("--f0", i_f0, "Run an orbit inline from this value; repeatable");
  inv->add_option("--steps", i_steps, "Steps for inline orbits")->check(CLI::PositiveNumber);
  inv->add_option("--policy", i_policy, "Branch policy for inline orbits");
  inv->add_flag("--fit", i_fit, "Fit a biquadratic to the pooled pairs");

  auto* limit = app.add_subcommand("limit", "Continuum-limit study");
  limit->require_subcommand(1);
  LimitArgs la;
  std::string limit_kind;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--eps", la.eps, "2^-a..2^-b or a comma list");
    sub->add_option("--T", la.T, "Window length");
    sub->add_option("--band", la.band, "Accepted order band lo,hi");
    sub->fallthrough();
    sub->callback([&, sub] { limit_kind = sub->get_name(); });
  };
  auto* lr = limit->add_subcommand("riccati", "Discrete Riccati step vs w' = w^2 + A");
  common(lr);
  lr->add_option("--Atilde", la.a_tilde, "Coefficient A");
  lr->add_option("--w0", la.w0, "Initial value");
  auto* lq = limit->add_subcommand("qrt", "Elliptic samples vs w'' = 2k^2 w^3 - (1+k^2) w");
  common(lq);
  lq->add_option("--k", la.k, "Modulus");
  lq->add_option("--C0", la.c0, "Phase");
  auto* ld = limit->add_subcommand("degenerate", "Quadratic-step recurrence vs its square-root ODE");
  common(ld);
  ld->add_option("--a-tau2", la.a_tau2, "a tau2^2");
  ld->add_option("--tau2sq", la.tau2_sq, "tau2^2");
  ld->add_option("--f0", la.f0, "Initial value");
  ld->add_option("--direction", la.direction, "Sign of w'(0)")->check(CLI::IsMember({-1, 1}));
  auto* le = limit->add_subcommand("eq10", "E10 factor -> canonical Riccati -> limit study");
  common(le);
  le->add_option("--delta", la.delta, "delta");
  le->add_option("--gamma0", la.gamma0, "Initial gamma (default: w0 = 0)");

  auto* consts = app.add_subcommand("constants", "Solve the parameter constraints of E17 / E19");
  std::string c_id;
  std::optional<int> c_theta;
  consts->add_option("id", c_id, "E17 or E19")->required();
  consts->add_option("--theta", c_theta, "E17 branch")->check(CLI::IsMember({-1, 1}));

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  bool v_json = false;
  std::optional<double> v_etol;
  verify->add_flag("--json", v_json, "Machine-readable report");
  verify->add_option("--elliptic-tol", v_etol, "Override the elliptic identity tolerance");

  for (auto* sub : {catalog, orbit, inv, limit, consts, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadParams;
  }

  try {
    if (*catalog) return cmd_catalog(g, cat_id);
    if (*orbit) return cmd_orbit(g, o_id, o_params, o_f0, o_steps, o_policy);
    if (*inv) return cmd_invariant(g, i_in, i_id, i_params, i_f0, i_steps, i_policy, i_fit);
    if (*limit) return cmd_limit(g, limit_kind, la);
    if (*consts) return cmd_constants(g, c_id, c_theta);
    if (*verify) return cmd_verify(g, v_json, v_etol);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParams;
  } catch (const FitError& e) {
    std::cerr << "fit error: " << e.what() << '\n';
    return kFitFail;
  } catch (const ConvergenceError& e) {
    std::cerr << "iteration error: " << e.what() << '\n';
    return kIterFail;
  } catch (const SingularityError& e) {
    std::cerr << "iteration error: " << e.what() << '\n';
    return kIterFail;
  } catch (const MalmquistError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIterFail;
  }
  return kOk;
}
