#include <doctest.h>

#include <sstream>

#include "malmquist/io.hpp"
#include "malmquist/orbit.hpp"

using namespace malmquist;

TEST_CASE("complex parsing") {
  CHECK(parse_complex("2") == Complex(2.0));
  CHECK(parse_complex(" 1.5 , -2 ") == Complex(1.5, -2.0));
  CHECK(std::abs(parse_complex("exp:1/3") - std::polar(1.0, 2 * kPi / 3)) < 1e-15);
  CHECK_THROWS_AS(parse_complex("abc"), ParameterError);
  CHECK_THROWS_AS(parse_complex("1,2x"), ParameterError);
  CHECK_THROWS_AS(parse_complex("exp:1/0"), ParameterError);
  CHECK_THROWS_AS(parse_complex(""), ParameterError);
}

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, 1.0 / 3.0, -2.718281828459045, 1e-300}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("orbit JSON round trip") {
  const CanonicalEquation eq = catalog_get(EquationId::E16, {});
  Orbit o = iterate(eq, 1.0, 4, BranchPolicy::principal());
  o.eq_id = EquationId::E16;
  const nlohmann::json j = orbit_json(o);
  CHECK(j["schema_version"] == "1");
  CHECK(j["values"][1] == "inf");
  const Orbit back = orbit_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.size() == o.size());
  for (std::size_t m = 0; m < o.size(); ++m) CHECK(back.values[m] == o.values[m]);
  CHECK(back.branches == o.branches);
  CHECK(back.eq_id == EquationId::E16);
  CHECK_THROWS_AS(orbit_from_json(nlohmann::json::object()), ParameterError);
}

TEST_CASE("orbit CSV") {
  Orbit o;
  o.values = {0.1, SpherePoint::infinity()};
  o.singular = {false, true};
  o.branches = {1};
  std::istringstream in(orbit_csv(o));
  std::string line;
  std::getline(in, line);
  CHECK(line == "m,re,im,branch,singular");
  std::getline(in, line);
  CHECK(line == "0,0.10000000000000001,0,-1,0");
  std::getline(in, line);
  CHECK(line == "1,inf,inf,1,1");
}

TEST_CASE("study serialization") {
  const LimitStudy s = riccati_limit_study(0.0, 1.0, 0.5, {0.25, 0.125});
  const nlohmann::json j = study_json(s);
  CHECK(j["kind"] == "riccati");
  CHECK(j["rows"].size() == 2);
  const std::string csv = study_csv(s);
  CHECK(csv.rfind("eps,error\n0.25,", 0) == 0);
}

TEST_CASE("equation JSON carries the curve when there is one") {
  const nlohmann::json j = equation_json(catalog_get(EquationId::E12, {{"kappa", 2.0}}));
  CHECK(j["curve_kind"] == "SELF");
  CHECK(j["curve"].size() == 3);
  CHECK(equation_json(catalog_get(EquationId::E18, {}))["curve"].is_null());
}
