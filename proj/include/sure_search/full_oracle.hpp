#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sure_search/geometry.hpp"
#include "sure_search/phase_solver.hpp"
#include "sure_search/subspace.hpp"

namespace sure_search {

/// Dense N-amplitude state vector. Element i belongs to block i / b.
class FullState {
 public:
  /// Uniform superposition 1/sqrt(N); throws std::out_of_range when
  /// solution_index is outside [0, N).
  FullState(const SearchGeometry& g, std::int64_t solution_index);

  const SearchGeometry& geometry() const { return geometry_; }
  std::int64_t solution_index() const { return solution_; }
  std::int64_t target_block() const { return solution_ / geometry_.block_size; }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }

  double norm() const;
  /// Total probability on elements inside / outside the target block.
  double probability_in_target_block() const;
  double probability_outside_target_block() const;

  /// Overlaps with |x_sol>, |rest of target block>, |remainder>.
  SubspaceState project() const;
  /// Norm of the component orthogonal to the invariant subspace.
  double out_of_subspace_norm() const;

  struct Summary {
    SubspaceState projection;
    double out_of_subspace_norm = 0.0;
    double norm = 0.0;
  };
  Summary summarize() const;

 private:
  SearchGeometry geometry_;
  std::int64_t solution_;
  std::vector<Complex> amplitudes_;
};

inline FullState full_initial_state(const SearchGeometry& g, std::int64_t solution_index) {
  return FullState(g, solution_index);
}

// In-place steps. Each applies the oracle flip on the solution element and a
// reflection built from rank-one projectors; no N x N matrix is formed.

/// -(I - 2|psi_init><psi_init|)(I - 2|x_sol><x_sol|)
void apply_global_step(FullState& state);
/// (sum_i (2|B_i><B_i| - I))(I - 2|x_sol><x_sol|), the blockwise Grover step.
void apply_local_step(FullState& state);
/// -[I - (1 - e^{2i theta})|psi_init><psi_init|][I - (1 - e^{i(phi - theta)})|x_sol><x_sol|]
void apply_final_step(FullState& state, double theta, double phi);

FullState full_global_step(FullState state);
FullState full_local_step(FullState state);
FullState full_final_step(FullState state, double theta, double phi);

struct Certification {
  std::int64_t solution_index = 0;
  double probability_outside = 0.0;
  double probability_inside = 0.0;
  /// Final-state deviation from run_plan, per component.
  double final_projection_error = 0.0;
  /// Worst per-component deviation from the subspace trajectory over all steps.
  double max_trajectory_error = 0.0;
  /// Worst out-of-subspace norm over all steps.
  double max_leakage = 0.0;
  /// Worst |1 - norm| over all steps.
  double max_norm_defect = 0.0;
};

/// Runs the plan on the dense state and compares it step by step against
/// the 3-dimensional evolution.
Certification certify_plan(const SearchGeometry& g, const StepPlan& plan,
                           std::int64_t solution_index);

}  // namespace sure_search
