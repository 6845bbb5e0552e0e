#include "sure_search/full_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sure_search {
namespace {

// Chunked sums: short naive runs folded into a Neumaier-compensated total.
// Certification compares norms at the 1e-12 level for N in the thousands,
// below what a single naive accumulation holds.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    carry_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

constexpr std::size_t kChunk = 16;

Complex sum(std::span<const Complex> values) {
  CompensatedSum re, im;
  for (std::size_t i = 0; i < values.size(); i += kChunk) {
    double r = 0.0, m = 0.0;
    for (const Complex& v : values.subspan(i, std::min(kChunk, values.size() - i))) {
      r += v.real();
      m += v.imag();
    }
    re.add(r);
    im.add(m);
  }
  return {re.value(), im.value()};
}

double squared_norm(std::span<const Complex> values) {
  CompensatedSum total;
  for (std::size_t i = 0; i < values.size(); i += kChunk) {
    double part = 0.0;
    for (const Complex& v : values.subspan(i, std::min(kChunk, values.size() - i))) part += std::norm(v);
    total.add(part);
  }
  return total.value();
}

// Squared distance of every value from a common level.
double spread_about(std::span<const Complex> values, Complex level) {
  CompensatedSum total;
  for (std::size_t i = 0; i < values.size(); i += kChunk) {
    double part = 0.0;
    for (const Complex& v : values.subspan(i, std::min(kChunk, values.size() - i))) part += std::norm(v - level);
    total.add(part);
  }
  return total.value();
}

}  // namespace

FullState::FullState(const SearchGeometry& g, std::int64_t solution_index)
    : geometry_(g), solution_(solution_index) {
  if (solution_index < 0 || solution_index >= g.size) {
    throw std::out_of_range("solution index " + std::to_string(solution_index) +
                            " outside [0, " + std::to_string(g.size) + ")");
  }
  amplitudes_.assign(static_cast<std::size_t>(g.size),
                     Complex{1.0 / std::sqrt(static_cast<double>(g.size)), 0.0});
}

double FullState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

double FullState::probability_in_target_block() const {
  const auto b = static_cast<std::size_t>(geometry_.block_size);
  return squared_norm(std::span(amplitudes_).subspan(static_cast<std::size_t>(target_block()) * b, b));
}

double FullState::probability_outside_target_block() const {
  const auto b = static_cast<std::size_t>(geometry_.block_size);
  const auto start = static_cast<std::size_t>(target_block()) * b;
  const std::span<const Complex> all(amplitudes_);
  return squared_norm(all.first(start)) + squared_norm(all.subspan(start + b));
}

SubspaceState FullState::project() const { return summarize().projection; }

double FullState::out_of_subspace_norm() const { return summarize().out_of_subspace_norm; }

FullState::Summary FullState::summarize() const {
  const auto b = static_cast<std::size_t>(geometry_.block_size);
  const auto start = static_cast<std::size_t>(target_block()) * b;
  const auto sol = static_cast<std::size_t>(solution_);
  const std::span<const Complex> all(amplitudes_);
  const std::span<const Complex> before = all.first(start);
  const std::span<const Complex> block = all.subspan(start, b);
  const std::span<const Complex> after = all.subspan(start + b);

  const double rest_count = static_cast<double>(geometry_.block_size - 1);
  const double rem_count = static_cast<double>(geometry_.size - geometry_.block_size);
  const Complex rest_sum = sum(block) - all[sol];
  const Complex rem_sum = sum(before) + sum(after);

  Summary out;
  out.projection = SubspaceState{all[sol], rest_sum / std::sqrt(rest_count), rem_sum / std::sqrt(rem_count)};

  // Orthogonal part: deviation of the rest of the target block and of the
  // remainder from their respective uniform levels.
  const Complex rest_level = rest_sum / rest_count;
  const Complex rem_level = rem_sum / rem_count;
  const double rest_spread = spread_about(block, rest_level) - std::norm(all[sol] - rest_level);
  const double rem_spread = spread_about(before, rem_level) + spread_about(after, rem_level);
  out.out_of_subspace_norm = std::sqrt(std::max(0.0, rest_spread) + rem_spread);
  out.norm = norm();
  return out;
}

void apply_global_step(FullState& state) {
  auto amps = state.amplitudes();
  amps[static_cast<std::size_t>(state.solution_index())] *= -1.0;
  // -(I - 2|u><u|) v = 2 <u|v> u - v with u uniform.
  const Complex twice_mean = 2.0 * sum(amps) / static_cast<double>(amps.size());
  for (Complex& v : amps) v = twice_mean - v;
}

void apply_local_step(FullState& state) {
  auto amps = state.amplitudes();
  amps[static_cast<std::size_t>(state.solution_index())] *= -1.0;
  const auto b = static_cast<std::size_t>(state.geometry().block_size);
  for (std::size_t start = 0; start < amps.size(); start += b) {
    auto block = amps.subspan(start, b);
    const Complex twice_mean = 2.0 * sum(block) / static_cast<double>(b);
    for (Complex& v : block) v = twice_mean - v;
  }
}

void apply_final_step(FullState& state, double theta, double phi) {
  auto amps = state.amplitudes();
  amps[static_cast<std::size_t>(state.solution_index())] *= std::polar(1.0, phi - theta);
  // <u|v> u_i = sum(v) / N for the uniform |psi_init>.
  const Complex d = 1.0 - std::polar(1.0, 2.0 * theta);
  const Complex shift = d * sum(amps) / static_cast<double>(amps.size());
  for (Complex& v : amps) v = shift - v;
}

FullState full_global_step(FullState state) {
  apply_global_step(state);
  return state;
}

FullState full_local_step(FullState state) {
  apply_local_step(state);
  return state;
}

FullState full_final_step(FullState state, double theta, double phi) {
  apply_final_step(state, theta, phi);
  return state;
}

Certification certify_plan(const SearchGeometry& g, const StepPlan& plan,
                           std::int64_t solution_index) {
  FullState state(g, solution_index);
  SubspaceState reference = initial_state(g);
  Certification cert;
  cert.solution_index = solution_index;

  const auto observe = [&] {
    const FullState::Summary now = state.summarize();
    cert.max_trajectory_error = std::max(cert.max_trajectory_error, max_abs_diff(now.projection, reference));
    cert.max_leakage = std::max(cert.max_leakage, now.out_of_subspace_norm);
    cert.max_norm_defect = std::max(cert.max_norm_defect, std::abs(1.0 - now.norm));
  };

  observe();
  const SubspaceOperator global_step = global_operator(g, 1);
  for (std::int64_t i = 0; i < plan.global_iterations; ++i) {
    apply_global_step(state);
    reference = global_step * reference;
    observe();
  }
  const SubspaceOperator local_step = local_operator(g, 1);
  for (std::int64_t i = 0; i < plan.local_iterations; ++i) {
    apply_local_step(state);
    reference = local_step * reference;
    observe();
  }
  apply_final_step(state, plan.theta, plan.phi);
  reference = final_operator(g, plan.theta, plan.phi) * reference;
  observe();

  cert.probability_outside = state.probability_outside_target_block();
  cert.probability_inside = state.probability_in_target_block();
  cert.final_projection_error = max_abs_diff(state.project(), run_plan(g, plan));
  return cert;
}

}  // namespace sure_search
