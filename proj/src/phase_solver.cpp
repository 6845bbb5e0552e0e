#include "sure_search/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sure_search {
namespace {

double real_part(Complex amplitude, const char* name) {
  if (std::abs(amplitude.imag()) >= kImaginaryTolerance) {
    throw std::domain_error(std::string("intermediate amplitude ") + name +
                            " has a non-negligible imaginary part");
  }
  return amplitude.real();
}

double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

}  // namespace

PhaseAuxiliaries auxiliaries(const SearchGeometry& g, const SubspaceState& intermediate) {
  const double a = real_part(intermediate.sol, "a");
  const double b = real_part(intermediate.block, "b");
  const double c = real_part(intermediate.rem, "c");
  const double sin_gamma = std::sin(g.gamma);
  const double cos_gamma = std::cos(g.gamma);
  return PhaseAuxiliaries{
      .x = a * sin_gamma * std::sin(g.theta_l) * cos_gamma,
      .y = b * sin_gamma * cos_gamma * std::cos(g.theta_l) + c * cos_gamma * cos_gamma,
      .z = -c / 2.0,
  };
}

bool feasible(const PhaseAuxiliaries& aux) {
  const auto [x, y, z] = aux;
  const bool inequality = x * x >= (y + z) * (y + z) - kInequalitySlack;
  const bool z_zero = std::abs(z) <= kZeroTolerance;
  return inequality && (z_zero || x * x - y * y - 2.0 * y * z > kZeroTolerance);
}

double phase_residual(const PhaseAuxiliaries& aux, double theta, double phi) {
  const Complex d = 1.0 - std::polar(1.0, 2.0 * theta);
  return std::abs(std::polar(1.0, phi - theta) * d * aux.x + d * aux.y + 2.0 * aux.z);
}

std::string_view to_string(Infeasibility reason) {
  switch (reason) {
    case Infeasibility::kNone: return "none";
    case Infeasibility::kInequalityViolated: return "inequality-violated";
    case Infeasibility::kZeroX: return "zero-x";
    case Infeasibility::kResidual: return "residual-check-failed";
  }
  return "unknown";
}

PhaseOutcome solve_phases(const PhaseAuxiliaries& aux) {
  const auto [x, y, z] = aux;

  // theta = 0 leaves only a rephasing of |x_sol>, so c = 0 stays 0.
  if (std::abs(z) <= kZeroTolerance) {
    return {PhaseSolution{0.0, 0.0, phase_residual(aux, 0.0, 0.0)}, Infeasibility::kNone};
  }
  if (!feasible(aux)) return {std::nullopt, Infeasibility::kInequalityViolated};
  if (x == 0.0) return {std::nullopt, Infeasibility::kZeroX};

  const double sin2_theta = std::min(1.0, z * z / (x * x - y * y - 2.0 * y * z));
  const double sin_theta = std::sqrt(sin2_theta);
  const double cos_abs = std::sqrt(1.0 - sin2_theta);

  for (const double cos_theta : {cos_abs, -cos_abs}) {
    const double sin_phi = -(y / x) * sin_theta - z / (x * sin_theta);
    const double cos_phi = -(y / x) * cos_theta;
    const double theta = std::atan2(sin_theta, cos_theta);
    const double phi = wrap_two_pi(std::atan2(sin_phi, cos_phi));
    const double residual = phase_residual(aux, theta, phi);
    if (residual < kResidualTolerance && theta < std::numbers::pi) {
      return {PhaseSolution{theta, phi, residual}, Infeasibility::kNone};
    }
  }
  return {std::nullopt, Infeasibility::kResidual};
}

PlanOutcome plan_sure_success(const SearchGeometry& g) {
  PlanOutcome outcome;
  const auto candidates = candidate_counts(ideal_counts(g));
  for (int offset = 0; offset <= kMaxGlobalOffset; ++offset) {
    const CountPair counts = candidates[static_cast<std::size_t>(offset)];
    const SubspaceState intermediate =
        local_operator(g, counts.local) * global_operator(g, counts.global) * initial_state(g);
    const PhaseAuxiliaries aux = auxiliaries(g, intermediate);
    const PhaseOutcome phases = solve_phases(aux);

    outcome.attempts[static_cast<std::size_t>(offset)] = PlanAttempt{counts, aux, phases.reason};
    outcome.attempted = offset + 1;
    if (phases) {
      outcome.plan = IterationPlan{counts.local, counts.global, offset, *phases.solution};
      return outcome;
    }
  }
  return outcome;
}

GrkBaseline plan_grk_baseline(const SearchGeometry& g) {
  const IdealCounts ideal = ideal_counts(g);
  GrkBaseline baseline;
  baseline.local_iterations = static_cast<std::int64_t>(std::round(ideal.local));
  baseline.global_iterations = static_cast<std::int64_t>(std::round(ideal.global));
  const SubspaceState out = run_plan(
      g, StepPlan{baseline.local_iterations, baseline.global_iterations, kStandardTheta,
                  kStandardPhi});
  baseline.success_probability = std::clamp(1.0 - std::norm(out.rem), 0.0, 1.0);
  return baseline;
}

}  // namespace sure_search
