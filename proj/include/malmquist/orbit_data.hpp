#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "malmquist/complex.hpp"

namespace malmquist {

/// Registry keys: the linear and Riccati steps plus E9 .. E19.
enum class EquationId { E6, E7, E9, E10, E11, E12, E13, E14, E15, E16, E17, E18, E19 };

inline constexpr std::array<EquationId, 13> kAllEquations = {
    EquationId::E6,  EquationId::E7,  EquationId::E9,  EquationId::E10, EquationId::E11,
    EquationId::E12, EquationId::E13, EquationId::E14, EquationId::E15, EquationId::E16,
    EquationId::E17, EquationId::E18, EquationId::E19};

std::string_view to_string(EquationId id);
/// Accepts "E12", "e12", "12"; LINEAR and RICCATI name E6 and E7.
std::optional<EquationId> parse_equation_id(std::string_view text);

/// Lattice samples f(z0 + m), m = 0 .. size-1.
///
/// branches[m] is the root index chosen to produce values[m + 1];
/// singular[m] marks values[m] as a pole (stored as infinity).
struct Orbit {
  std::vector<SpherePoint> values;
  std::vector<int> branches;
  std::vector<bool> singular;
  std::optional<EquationId> eq_id;

  std::size_t size() const { return values.size(); }
};

}  // namespace malmquist
