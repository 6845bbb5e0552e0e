#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "sure_search/geometry.hpp"

namespace sure_search {

using Complex = std::complex<double>;

/// Amplitudes over the invariant basis
///   { |x_sol>, |rest of target block>, |remainder> }.
struct SubspaceState {
  Complex sol;
  Complex block;
  Complex rem;

  double norm() const;
  std::array<Complex, 3> as_array() const { return {sol, block, rem}; }
};

/// Dense 3x3 complex matrix, row-major. Products apply right to left:
/// (A * B) * s means B acts on s first.
class SubspaceOperator {
 public:
  SubspaceOperator() = default;
  explicit SubspaceOperator(const std::array<Complex, 9>& row_major) : m_(row_major) {}

  static SubspaceOperator identity();

  Complex& operator()(int row, int col) { return m_[static_cast<std::size_t>(3 * row + col)]; }
  Complex operator()(int row, int col) const { return m_[static_cast<std::size_t>(3 * row + col)]; }

  SubspaceOperator adjoint() const;

  /// max |(U^dagger U - I)_ij|
  double unitarity_defect() const;

  /// max |A_ij - B_ij|
  double max_abs_diff(const SubspaceOperator& other) const;

  friend SubspaceOperator operator*(const SubspaceOperator& a, const SubspaceOperator& b);
  friend SubspaceState operator*(const SubspaceOperator& a, const SubspaceState& s);

 private:
  std::array<Complex, 9> m_{};
};

/// Largest per-component modulus difference between two states.
double max_abs_diff(const SubspaceState& a, const SubspaceState& b);

SubspaceState initial_state(const SearchGeometry& g);
SubspaceState target_state(const SearchGeometry& g);

/// Basis change between {x_sol, t', r} and {x_sol, w, w_perp} where w is
/// the normalized part of |psi_init> orthogonal to |x_sol>. Symmetric involution.
SubspaceOperator basis_change(const SearchGeometry& g);

/// G_g^{j} = T M_j T. Throws std::domain_error for negative counts.
SubspaceOperator global_operator(const SearchGeometry& g, std::int64_t iterations);

/// G_l^{j}: rotation by 2 j theta_l on the first two coordinates.
SubspaceOperator local_operator(const SearchGeometry& g, std::int64_t iterations);

/// Closed-form G_l^{j_l} G_g^{j_g} |psi_init>, the (a, b, c) feeding the
/// phase condition.
SubspaceState closed_form_intermediate(const SearchGeometry& g, std::int64_t global_iterations,
                                       std::int64_t local_iterations);

/// Phase-modified final global step
///   -[1 - (1 - e^{2i theta}) |psi_init><psi_init|] [1 - (1 - e^{i(phi - theta)}) |x_sol><x_sol|]
/// expressed in the invariant basis.
SubspaceOperator final_operator(const SearchGeometry& g, double theta, double phi);

/// Phase pair that turns final_operator into the plain Grover iteration.
inline constexpr double kStandardTheta = 1.5707963267948966;  // pi/2
inline constexpr double kStandardPhi = 4.71238898038469;      // 3pi/2

struct StepPlan {
  std::int64_t local_iterations = 0;
  std::int64_t global_iterations = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// final_operator * G_l^{j_l} * G_g^{j_g} * |psi_init>, by matrix products.
SubspaceState run_plan(const SearchGeometry& g, const StepPlan& plan);

}  // namespace sure_search
