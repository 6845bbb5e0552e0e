#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sure_search/full_oracle.hpp"
#include "sure_search/geometry.hpp"
#include "sure_search/phase_solver.hpp"

namespace sure_search {

enum class Status { kSolved, kKnownFailure, kUnexpectedFailure };

std::string_view to_string(Status status);
std::optional<Status> parse_status(std::string_view text);

/// Instance whose planner failure is expected and not treated as a defect.
inline bool is_known_failure_instance(std::int64_t blocks, std::int64_t block_size) {
  return blocks == 2 && block_size == 2;
}

inline constexpr std::int64_t kDefaultCertCap = 4096;

/// One row of the sweep report. Plan-derived fields are empty unless the
/// instance was solved; full_rem_prob is empty when N exceeds the
/// certification cap.
struct SweepRecord {
  std::int64_t K = 0;
  std::int64_t b = 0;
  std::int64_t N = 0;
  double j_l_real = 0.0;
  double j_g_real = 0.0;
  std::int64_t j_l_hat = 0;
  std::optional<std::int64_t> j_g_hat;
  std::optional<std::int64_t> offset;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> residual;
  std::optional<double> subspace_rem_prob;
  std::optional<double> full_rem_prob;
  std::int64_t grk_j_l = 0;
  std::int64_t grk_j_g = 0;
  double grk_success_prob = 0.0;
  std::optional<std::int64_t> oracle_queries;
  Status status = Status::kSolved;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Everything computed for one (K, b): the emitted record plus the raw
/// planner outcome and dense certifications behind it.
struct InstanceReport {
  SweepRecord record;
  PlanOutcome outcome;
  GrkBaseline baseline;
  /// Empty unless solved and N <= cert cap; otherwise solution indices 0
  /// and N-1, which lie in different blocks.
  std::vector<Certification> certifications;
};

InstanceReport evaluate_instance(std::int64_t blocks, std::int64_t block_size,
                                 std::int64_t cert_cap = kDefaultCertCap);

/// All (K, b) with K, b >= 2 and K*b <= max_n, K-major then b-minor.
std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_instances(std::int64_t max_n);

struct SweepOptions {
  std::int64_t max_n = 0;
  std::int64_t cert_cap = kDefaultCertCap;
  unsigned threads = 0;  // 0: hardware concurrency
  std::ostream* diagnostics = nullptr;
};

/// Evaluates every enumerated instance on a worker pool; the result is in
/// enumeration order regardless of completion order. Unexpected failures
/// and the offset distribution are written to options.diagnostics.
std::vector<InstanceReport> run_sweep(const SweepOptions& options);

std::vector<SweepRecord> sweep(std::int64_t max_n, std::int64_t cert_cap = kDefaultCertCap);

std::vector<std::string> record_field_names();

std::string emit_csv(const std::vector<SweepRecord>& records);
std::string emit_json(const std::vector<SweepRecord>& records);

/// Inverse of emit_csv. Throws std::invalid_argument on malformed input.
std::vector<SweepRecord> parse_csv(std::string_view text);
/// Inverse of emit_json. Throws on malformed input.
std::vector<SweepRecord> parse_json(std::string_view text);

enum class OutputFormat { kCsv, kJson };

inline constexpr int kExitOk = 0;
inline constexpr int kExitKnownFailure = 2;
inline constexpr int kExitUnexpectedFailure = 3;
inline constexpr int kExitUsage = 64;

int exit_code_for(Status status);

/// Human-readable summary of one instance followed by its machine record.
/// Returns the process exit status.
int plan_command(std::int64_t blocks, std::int64_t block_size, std::int64_t cert_cap,
                 OutputFormat format, std::ostream& out, std::ostream& err);

/// Plans one instance and certifies it densely at the given solution index.
int certify_command(std::int64_t blocks, std::int64_t block_size, std::int64_t solution_index,
                    std::int64_t cert_cap,
                    std::ostream& out, std::ostream& err);

}  // namespace sure_search
