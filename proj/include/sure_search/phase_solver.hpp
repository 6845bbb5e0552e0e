#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sure_search/geometry.hpp"
#include "sure_search/subspace.hpp"

namespace sure_search {

/// Real combinations of the intermediate amplitudes (a, b, c) that reduce
/// the vanishing-remainder requirement to
///   e^{i(phi - theta)} (1 - e^{2i theta}) x + (1 - e^{2i theta}) y + 2 z = 0.
struct PhaseAuxiliaries {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline constexpr double kImaginaryTolerance = 1e-12;
inline constexpr double kZeroTolerance = 1e-13;
inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kResidualTolerance = 1e-10;

/// Throws std::domain_error if any amplitude carries an imaginary part
/// above kImaginaryTolerance; the evolution before the final step is real.
PhaseAuxiliaries auxiliaries(const SearchGeometry& g, const SubspaceState& intermediate);

bool feasible(const PhaseAuxiliaries& aux);

/// Modulus of the phase-condition left-hand side.
double phase_residual(const PhaseAuxiliaries& aux, double theta, double phi);

struct PhaseSolution {
  double theta = 0.0;  // [0, pi)
  double phi = 0.0;    // [0, 2pi)
  double residual = 0.0;
};

enum class Infeasibility {
  kNone,
  kInequalityViolated,  // x^2 < (y+z)^2, or the sin^2(theta) denominator vanishes
  kZeroX,               // x == 0 while z != 0
  kResidual,            // neither cos(theta) branch met the residual tolerance
};

std::string_view to_string(Infeasibility reason);

struct PhaseOutcome {
  std::optional<PhaseSolution> solution;
  Infeasibility reason = Infeasibility::kNone;

  explicit operator bool() const { return solution.has_value(); }
};

PhaseOutcome solve_phases(const PhaseAuxiliaries& aux);

struct IterationPlan {
  std::int64_t local_iterations = 0;   // floor(j_l)
  std::int64_t global_iterations = 0;  // floor(j_g) + offset
  int offset = 0;
  PhaseSolution phases;

  /// Every Grover step, the phase-modified final one included.
  std::int64_t oracle_queries() const { return global_iterations + local_iterations + 1; }

  StepPlan steps() const {
    return StepPlan{local_iterations, global_iterations, phases.theta, phases.phi};
  }
};

struct PlanAttempt {
  CountPair counts;
  PhaseAuxiliaries aux;
  Infeasibility reason = Infeasibility::kNone;
};

struct PlanOutcome {
  std::optional<IterationPlan> plan;
  /// One entry per offset tried; on success the last entry is the accepted one.
  std::array<PlanAttempt, kMaxGlobalOffset + 1> attempts{};
  int attempted = 0;

  explicit operator bool() const { return plan.has_value(); }
};

/// Tries global offsets 0, 1, 2 in order and returns the first candidate
/// whose phase condition can be solved.
PlanOutcome plan_sure_success(const SearchGeometry& g);

struct GrkBaseline {
  std::int64_t local_iterations = 0;
  std::int64_t global_iterations = 0;
  double success_probability = 0.0;
};

/// Nearest-integer counts (halves away from zero) with the unmodified
/// final Grover step; success is the probability of ending in the target block.
GrkBaseline plan_grk_baseline(const SearchGeometry& g);

}  // namespace sure_search
