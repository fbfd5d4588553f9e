#pragma once

#include <utility>
#include <vector>

#include "malmquist/catalog.hpp"

namespace malmquist {

enum class BranchMode { Principal, NearestPrediction, FixedSequence };

/// How f(z+1) is picked among the n-th roots of R(f(z)).
/// Root j is the principal root times exp(2 pi i j / n).
struct BranchPolicy {
  BranchMode mode = BranchMode::Principal;
  std::vector<int> sequence;  // FixedSequence only: one index per step

  static BranchPolicy principal() { return {}; }
  static BranchPolicy nearest() { return {BranchMode::NearestPrediction, {}}; }
  static BranchPolicy fixed(std::vector<int> seq) { return {BranchMode::FixedSequence, std::move(seq)}; }
};

inline constexpr double kOrbitTol = 1e-9;

/// Forward iteration for `steps` steps from f0.
///
/// A pole of R yields an infinite, singular entry; iteration continues from
/// R(infinity) when that is finite and stops otherwise (the orbit is then
/// shorter than steps + 1).
Orbit iterate(const CanonicalEquation& eq, Complex f0, int steps, const BranchPolicy& policy);

/// max |f_{m+1}^n - R(f_m)| / (1 + |R(f_m)|) over finite consecutive pairs.
double orbit_residual(const CanonicalEquation& eq, const Orbit& orb);

/// Finite consecutive pairs (f_{m+1}, f_m), i.e. (x, y) for SELF curves.
std::vector<std::pair<Complex, Complex>> orbit_pairs(const Orbit& orb);

struct HChain {
  std::vector<Complex> h;
  std::vector<Complex> H;
  double curve_residual;  // max |curve(f_{m+1}, H_m)|
};

/// h_m^2 = (f_m + i eta)/(f_m - i eta) with the sign of h_m following h_{m-1};
/// H_m = (h_m^2 + 1)/(2 h_m). Throws SingularityError at f = +-i eta.
HChain h_substitution_chain(const Orbit& eq14_orbit, Complex eta);

}  // namespace malmquist
