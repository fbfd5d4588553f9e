#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "malmquist/catalog.hpp"
#include "malmquist/continuum.hpp"

namespace malmquist {

inline constexpr const char* kSchemaVersion = "1";

/// "re", "re,im" or "exp:num/den" (= exp(2 pi i num/den)).
/// Throws ParameterError on malformed text.
Complex parse_complex(std::string_view text);

/// Round-trip formatting (17 significant digits).
std::string format_double(double v);

nlohmann::json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json sphere_json(SpherePoint p);  // [re, im] or "inf"

nlohmann::json matrix_json(const Matrix3c& m);
nlohmann::json params_json(const ParamMap& params);

/// { id, n, params, constraints, curve } for a validated instance.
nlohmann::json equation_json(const CanonicalEquation& eq);
/// Registry entry without bound parameters.
nlohmann::json info_json(const EquationInfo& info);

nlohmann::json orbit_json(const Orbit& orb);
Orbit orbit_from_json(const nlohmann::json& j);
/// Columns m, re, im, branch, singular; poles are written as inf.
std::string orbit_csv(const Orbit& orb);

nlohmann::json study_json(const LimitStudy& s);
/// Columns eps, error.
std::string study_csv(const LimitStudy& s);

}  // namespace malmquist
