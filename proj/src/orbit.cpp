#include "malmquist/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace malmquist {

namespace {

// Extrapolation from the trailing run of finite values, if any.
std::optional<Complex> predict(const Orbit& orb) {
  std::vector<Complex> tail;
  for (std::size_t i = orb.values.size(); i-- > 0 && tail.size() < 3;) {
    if (orb.singular[i] || orb.values[i].is_infinite()) break;
    tail.push_back(orb.values[i].value());
  }
  if (tail.size() == 3) return 3.0 * tail[0] - 3.0 * tail[1] + tail[2];
  if (tail.size() == 2) return 2.0 * tail[0] - tail[1];
  return std::nullopt;
}

int choose_branch(const Orbit& orb, Complex r, int n, const BranchPolicy& policy, int step) {
  switch (policy.mode) {
    case BranchMode::Principal:
      return 0;
    case BranchMode::FixedSequence: {
      if (static_cast<std::size_t>(step) >= policy.sequence.size())
        throw ParameterError("branch policy: FIXED_SEQUENCE exhausted");
      const int j = policy.sequence[static_cast<std::size_t>(step)];
      if (j < 0 || j >= n) throw ParameterError("branch policy: root index out of range");
      return j;
    }
    case BranchMode::NearestPrediction: {
      const auto guess = predict(orb);
      if (!guess) return 0;
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        const double d = std::abs(nth_root(r, n, j) - *guess);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      return best;
    }
  }
  return 0;
}

}  // namespace

Orbit iterate(const CanonicalEquation& eq, Complex f0, int steps, const BranchPolicy& policy) {
  if (steps < 1) throw ParameterError("iterate: steps must be >= 1");
  if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()))
    throw ParameterError("iterate: f0 must be finite");
  Orbit orb;
  orb.eq_id = eq.id;
  orb.values.push_back(f0);
  orb.singular.push_back(false);
  for (int step = 0; step < steps; ++step) {
    const SpherePoint cur = orb.values.back();
    const SpherePoint r = eq.R(cur);
    if (r.is_infinite()) {
      if (cur.is_infinite()) break;  // R(infinity) = infinity: cannot continue
      orb.values.push_back(SpherePoint::infinity());
      orb.singular.push_back(true);
      orb.branches.push_back(-1);
      continue;
    }
    const int j = choose_branch(orb, r.value(), eq.n, policy, step);
    orb.values.push_back(nth_root(r.value(), eq.n, j));
    orb.singular.push_back(false);
    orb.branches.push_back(j);
  }
  return orb;
}

double orbit_residual(const CanonicalEquation& eq, const Orbit& orb) {
  double worst = 0.0;
  for (std::size_t m = 0; m + 1 < orb.values.size(); ++m) {
    if (orb.singular[m] || orb.singular[m + 1]) continue;
    if (orb.values[m].is_infinite() || orb.values[m + 1].is_infinite()) continue;
    SpherePoint r;
    try {
      r = eq.R(orb.values[m]);
    } catch (const SingularityError&) {
      continue;
    }
    if (r.is_infinite()) continue;
    const Complex lhs = std::pow(orb.values[m + 1].value(), eq.n);
    worst = std::max(worst, std::abs(lhs - r.value()) / (1.0 + std::abs(r.value())));
  }
  return worst;
}

std::vector<std::pair<Complex, Complex>> orbit_pairs(const Orbit& orb) {
  std::vector<std::pair<Complex, Complex>> out;
  for (std::size_t m = 0; m + 1 < orb.values.size(); ++m) {
    if (orb.values[m].is_infinite() || orb.values[m + 1].is_infinite()) continue;
    out.emplace_back(orb.values[m + 1].value(), orb.values[m].value());
  }
  return out;
}

HChain h_substitution_chain(const Orbit& orb, Complex eta) {
  const Complex ie = Complex(0.0, 1.0) * eta;
  const AssociatedCurve curve = associated_curve(EquationId::E14, {{"eta", eta}});
  HChain out;
  out.curve_residual = 0.0;
  for (std::size_t m = 0; m < orb.values.size(); ++m) {
    if (orb.values[m].is_infinite()) throw ParameterError("h_substitution_chain: orbit has a pole");
    const Complex f = orb.values[m].value();
    const double scale = 1.0 + std::abs(f);
    if (std::abs(f - ie) <= 1e-12 * scale)
      throw SingularityError("h_substitution_chain: f = i eta is a branch point");
    if (std::abs(f + ie) <= 1e-12 * scale)
      throw SingularityError("h_substitution_chain: f = -i eta gives h = 0");
    Complex h = std::sqrt((f + ie) / (f - ie));
    if (!out.h.empty() && std::abs(-h - out.h.back()) < std::abs(h - out.h.back())) h = -h;
    out.h.push_back(h);
    out.H.push_back((h * h + 1.0) / (2.0 * h));
  }
  for (std::size_t m = 0; m + 1 < orb.values.size(); ++m) {
    const double r = std::abs(biquadratic_eval(curve.curve, orb.values[m + 1].value(), out.H[m]));
    out.curve_residual = std::max(out.curve_residual, r);
  }
  return out;
}

}  // namespace malmquist
