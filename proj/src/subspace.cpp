#include "sure_search/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sure_search {
namespace {

void require_non_negative(std::int64_t iterations, const char* what) {
  if (iterations < 0) {
    throw std::domain_error(std::string(what) + " iteration count must be >= 0, got " +
                            std::to_string(iterations));
  }
}

SubspaceOperator rotation_block(double angle, Complex corner) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return SubspaceOperator({c, s, 0.0,   //
                           -s, c, 0.0,  //
                           0.0, 0.0, corner});
}

}  // namespace

double SubspaceState::norm() const {
  return std::sqrt(std::norm(sol) + std::norm(block) + std::norm(rem));
}

SubspaceOperator SubspaceOperator::identity() {
  return SubspaceOperator({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0});
}

SubspaceOperator SubspaceOperator::adjoint() const {
  SubspaceOperator out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out(r, c) = std::conj((*this)(c, r));
    }
  }
  return out;
}

double SubspaceOperator::unitarity_defect() const {
  return (adjoint() * *this).max_abs_diff(identity());
}

double SubspaceOperator::max_abs_diff(const SubspaceOperator& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  }
  return worst;
}

SubspaceOperator operator*(const SubspaceOperator& a, const SubspaceOperator& b) {
  SubspaceOperator out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    }
  }
  return out;
}

SubspaceState operator*(const SubspaceOperator& a, const SubspaceState& s) {
  return SubspaceState{
      a(0, 0) * s.sol + a(0, 1) * s.block + a(0, 2) * s.rem,
      a(1, 0) * s.sol + a(1, 1) * s.block + a(1, 2) * s.rem,
      a(2, 0) * s.sol + a(2, 1) * s.block + a(2, 2) * s.rem,
  };
}

double max_abs_diff(const SubspaceState& a, const SubspaceState& b) {
  return std::max({std::abs(a.sol - b.sol), std::abs(a.block - b.block), std::abs(a.rem - b.rem)});
}

SubspaceState initial_state(const SearchGeometry& g) {
  const double sg = std::sin(g.gamma);
  return SubspaceState{sg * std::sin(g.theta_l), sg * std::cos(g.theta_l), std::cos(g.gamma)};
}

SubspaceState target_state(const SearchGeometry& g) {
  return SubspaceState{std::sin(g.theta_l), std::cos(g.theta_l), 0.0};
}

SubspaceOperator basis_change(const SearchGeometry& g) {
  const double cos_g = std::cos(g.theta_g);
  const double p = std::cos(g.theta_l) * std::sin(g.gamma) / cos_g;
  const double q = std::cos(g.gamma) / cos_g;
  return SubspaceOperator({1.0, 0.0, 0.0,  //
                           0.0, p, q,      //
                           0.0, q, -p});
}

SubspaceOperator global_operator(const SearchGeometry& g, std::int64_t iterations) {
  require_non_negative(iterations, "global");
  const double parity = (iterations % 2 == 0) ? 1.0 : -1.0;
  const double angle = 2.0 * static_cast<double>(iterations) * g.theta_g;
  const SubspaceOperator t = basis_change(g);
  return t * rotation_block(angle, parity) * t;
}

SubspaceOperator local_operator(const SearchGeometry& g, std::int64_t iterations) {
  require_non_negative(iterations, "local");
  return rotation_block(2.0 * static_cast<double>(iterations) * g.theta_l, 1.0);
}

SubspaceState closed_form_intermediate(const SearchGeometry& g, std::int64_t global_iterations,
                                       std::int64_t local_iterations) {
  require_non_negative(global_iterations, "global");
  require_non_negative(local_iterations, "local");

  const double sin_gamma = std::sin(g.gamma);
  const double cos_gamma = std::cos(g.gamma);
  const double cos_l = std::cos(g.theta_l);
  const double sin_tg = std::sin(g.theta_g);
  const double cos_tg = std::cos(g.theta_g);
  const double m = cos_l * cos_l * sin_gamma * sin_gamma + cos_gamma * cos_gamma;

  const double global_angle = 2.0 * static_cast<double>(global_iterations) * g.theta_g;
  const double local_angle = 2.0 * static_cast<double>(local_iterations) * g.theta_l;
  const double cg = std::cos(global_angle);
  const double sg = std::sin(global_angle);
  const double cl = std::cos(local_angle);
  const double sl = std::sin(local_angle);

  // Shared factors of the state after the global iterations alone.
  const double sol_part = cos_tg * (sg * m + cg * cos_tg * sin_tg);
  const double spread = cg * m - sg * cos_tg * sin_tg;

  const double scale = 1.0 / (cos_tg * cos_tg);
  return SubspaceState{
      scale * (cl * sol_part + sl * cos_l * sin_gamma * spread),
      scale * (-sl * sol_part + cl * cos_l * sin_gamma * spread),
      scale * (cos_gamma * spread),
  };
}

SubspaceOperator final_operator(const SearchGeometry& g, double theta, double phi) {
  const double sin_gamma = std::sin(g.gamma);
  const double cos_gamma = std::cos(g.gamma);
  const double sin_l = std::sin(g.theta_l);
  const double cos_l = std::cos(g.theta_l);

  const Complex oracle_phase = std::polar(1.0, phi - theta);
  const Complex d = 1.0 - std::polar(1.0, 2.0 * theta);

  SubspaceOperator f;
  f(0, 0) = -oracle_phase * (1.0 - d * sin_gamma * sin_gamma * sin_l * sin_l);
  f(0, 1) = d * sin_gamma * sin_gamma * sin_l * cos_l;
  f(0, 2) = d * cos_gamma * sin_gamma * sin_l;
  f(1, 0) = oracle_phase * d * sin_gamma * sin_gamma * sin_l * cos_l;
  f(1, 1) = d * sin_gamma * sin_gamma * cos_l * cos_l - 1.0;
  f(1, 2) = d * cos_gamma * sin_gamma * cos_l;
  f(2, 0) = oracle_phase * d * sin_gamma * sin_l * cos_gamma;
  f(2, 1) = d * sin_gamma * cos_gamma * cos_l;
  f(2, 2) = d * cos_gamma * cos_gamma - 1.0;
  return f;
}

SubspaceState run_plan(const SearchGeometry& g, const StepPlan& plan) {
  const SubspaceOperator evolution = final_operator(g, plan.theta, plan.phi) *
                                     local_operator(g, plan.local_iterations) *
                                     global_operator(g, plan.global_iterations);
  return evolution * initial_state(g);
}

}  // namespace sure_search
