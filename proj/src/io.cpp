#include "malmquist/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace malmquist {

namespace {

double parse_real(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw ParameterError("cannot parse number '" + s + "'");
  return v;
}

std::string trim(std::string_view t) {
  const auto b = t.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = t.find_last_not_of(" \t");
  return std::string(t.substr(b, e - b + 1));
}

}  // namespace

Complex parse_complex(std::string_view raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ParameterError("empty complex value");
  if (text.rfind("exp:", 0) == 0) {
    const std::string frac = text.substr(4);
    const auto slash = frac.find('/');
    if (slash == std::string::npos) throw ParameterError("exp:num/den expected, got '" + text + "'");
    const double num = parse_real(frac.substr(0, slash));
    const double den = parse_real(frac.substr(slash + 1));
    if (den == 0.0) throw ParameterError("exp:num/den with zero denominator");
    return std::polar(1.0, 2.0 * kPi * num / den);
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos) return parse_real(text);
  return {parse_real(trim(text.substr(0, comma))), parse_real(trim(text.substr(comma + 1)))};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ParameterError("complex value must be a number or [re, im]");
}

nlohmann::json sphere_json(SpherePoint p) {
  if (p.is_infinite()) return "inf";
  return complex_json(p.value());
}

nlohmann::json matrix_json(const Matrix3c& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (Complex v : row) r.push_back(complex_json(v));
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json params_json(const ParamMap& params) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, value] : params) out[name] = complex_json(value);
  return out;
}

nlohmann::json info_json(const EquationInfo& info) {
  return {{"id", std::string(to_string(info.id))},
          {"n", info.n},
          {"formula", info.formula},
          {"params", info.params},
          {"constraints", info.constraints},
          {"hint", info.hint},
          {"metadata", info.metadata}};
}

nlohmann::json equation_json(const CanonicalEquation& eq) {
  nlohmann::json out{{"id", std::string(to_string(eq.id))},
                     {"n", eq.n},
                     {"params", params_json(eq.params)},
                     {"constraints", equation_info(eq.id).constraints}};
  try {
    const AssociatedCurve c = associated_curve(eq.id, eq.params);
    out["curve"] = matrix_json(c.curve.matrix());
    out["curve_kind"] = c.kind == CurveKind::Self ? "SELF" : "H_CHAIN";
  } catch (const ParameterError&) {
    out["curve"] = nullptr;
  }
  return out;
}

nlohmann::json orbit_json(const Orbit& orb) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : orb.values) values.push_back(sphere_json(v));
  nlohmann::json singular = nlohmann::json::array();
  for (bool b : orb.singular) singular.push_back(b);
  nlohmann::json out{{"schema_version", kSchemaVersion},
                     {"values", values},
                     {"branches", orb.branches},
                     {"singular", singular}};
  out["eq_id"] = orb.eq_id ? nlohmann::json(std::string(to_string(*orb.eq_id))) : nlohmann::json();
  return out;
}

Orbit orbit_from_json(const nlohmann::json& j) {
  Orbit orb;
  try {
    for (const auto& v : j.at("values")) {
      if (v.is_string()) {
        if (v.get<std::string>() != "inf") throw ParameterError("orbit value must be [re, im] or \"inf\"");
        orb.values.push_back(SpherePoint::infinity());
      } else {
        orb.values.push_back(complex_from_json(v));
      }
    }
    if (j.contains("singular")) {
      for (const auto& b : j.at("singular")) orb.singular.push_back(b.get<bool>());
    } else {
      for (const auto& v : orb.values) orb.singular.push_back(v.is_infinite());
    }
    if (j.contains("branches")) orb.branches = j.at("branches").get<std::vector<int>>();
    else orb.branches.assign(orb.values.empty() ? 0 : orb.values.size() - 1, -1);
    if (j.contains("eq_id") && j.at("eq_id").is_string())
      orb.eq_id = parse_equation_id(j.at("eq_id").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed orbit JSON: ") + e.what());
  }
  if (orb.values.empty()) throw ParameterError("orbit JSON has no values");
  if (orb.singular.size() != orb.values.size() || orb.branches.size() + 1 != orb.values.size())
    throw ParameterError("orbit JSON: inconsistent lengths");
  return orb;
}

std::string orbit_csv(const Orbit& orb) {
  std::ostringstream os;
  os << "m,re,im,branch,singular\n";
  for (std::size_t m = 0; m < orb.values.size(); ++m) {
    const auto& v = orb.values[m];
    const std::string re = v.is_infinite() ? "inf" : format_double(v.value().real());
    const std::string im = v.is_infinite() ? "inf" : format_double(v.value().imag());
    const int branch = m == 0 ? -1 : orb.branches[m - 1];
    os << m << ',' << re << ',' << im << ',' << branch << ',' << (orb.singular[m] ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json study_json(const LimitStudy& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < s.eps_list.size(); ++i) {
    nlohmann::json row{{"eps", s.eps_list[i]}, {"error", s.errors[i]}, {"flagged", bool(s.flagged[i])}};
    if (i < s.relation_residuals.size()) row["relation_residual"] = s.relation_residuals[i];
    rows.push_back(row);
  }
  nlohmann::json out{{"schema_version", kSchemaVersion},
                     {"kind", s.kind},
                     {"window", {s.t0, s.t0 + s.T}},
                     {"rows", rows},
                     {"fitted_order", s.fitted_order},
                     {"blow_up", s.blow_up}};
  if (s.kind == "eq10" || s.kind == "riccati") out["A"] = complex_json(s.coefficient);
  return out;
}

std::string study_csv(const LimitStudy& s) {
  std::ostringstream os;
  os << "eps,error\n";
  for (std::size_t i = 0; i < s.eps_list.size(); ++i)
    os << format_double(s.eps_list[i]) << ',' << format_double(s.errors[i]) << '\n';
  return os.str();
}

}  // namespace malmquist
