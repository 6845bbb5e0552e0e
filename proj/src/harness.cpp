#include "sure_search/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace sure_search {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Field table shared by the CSV and JSON writers/readers so both formats use
// identical keys in identical order.
struct FieldCodec {
  const char* name;
  std::string (*write)(const SweepRecord&);
  void (*read)(SweepRecord&, std::string_view);
  ordered_json (*to_json)(const SweepRecord&);
  void (*from_json)(SweepRecord&, const ordered_json&);
};

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed integer field: '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size()) {
    throw std::invalid_argument("malformed real field: '" + owned + "'");
  }
  return value;
}

template <auto Member>
FieldCodec int_field(const char* name) {
  return FieldCodec{
      name,
      [](const SweepRecord& r) { return std::to_string(r.*Member); },
      [](SweepRecord& r, std::string_view s) { r.*Member = parse_int(s); },
      [](const SweepRecord& r) { return ordered_json(r.*Member); },
      [](SweepRecord& r, const ordered_json& j) { r.*Member = j.get<std::int64_t>(); },
  };
}

template <auto Member>
FieldCodec real_field(const char* name) {
  return FieldCodec{
      name,
      [](const SweepRecord& r) { return format_double(r.*Member); },
      [](SweepRecord& r, std::string_view s) { r.*Member = parse_double(s); },
      [](const SweepRecord& r) { return ordered_json(r.*Member); },
      [](SweepRecord& r, const ordered_json& j) { r.*Member = j.get<double>(); },
  };
}

template <auto Member>
FieldCodec optional_int_field(const char* name) {
  return FieldCodec{
      name,
      [](const SweepRecord& r) { return (r.*Member) ? std::to_string(*(r.*Member)) : std::string(); },
      [](SweepRecord& r, std::string_view s) {
        r.*Member = s.empty() ? std::nullopt : std::optional<std::int64_t>(parse_int(s));
      },
      [](const SweepRecord& r) { return (r.*Member) ? ordered_json(*(r.*Member)) : ordered_json(nullptr); },
      [](SweepRecord& r, const ordered_json& j) {
        r.*Member = j.is_null() ? std::nullopt : std::optional<std::int64_t>(j.get<std::int64_t>());
      },
  };
}

template <auto Member>
FieldCodec optional_real_field(const char* name) {
  return FieldCodec{
      name,
      [](const SweepRecord& r) { return (r.*Member) ? format_double(*(r.*Member)) : std::string(); },
      [](SweepRecord& r, std::string_view s) {
        r.*Member = s.empty() ? std::nullopt : std::optional<double>(parse_double(s));
      },
      [](const SweepRecord& r) { return (r.*Member) ? ordered_json(*(r.*Member)) : ordered_json(nullptr); },
      [](SweepRecord& r, const ordered_json& j) {
        r.*Member = j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
      },
  };
}

Status status_or_throw(std::string_view text) {
  if (auto s = parse_status(text)) return *s;
  throw std::invalid_argument("unknown status '" + std::string(text) + "'");
}

const std::vector<FieldCodec>& fields() {
  static const std::vector<FieldCodec> table = {
      int_field<&SweepRecord::K>("K"),
      int_field<&SweepRecord::b>("b"),
      int_field<&SweepRecord::N>("N"),
      real_field<&SweepRecord::j_l_real>("j_l_real"),
      real_field<&SweepRecord::j_g_real>("j_g_real"),
      int_field<&SweepRecord::j_l_hat>("j_l_hat"),
      optional_int_field<&SweepRecord::j_g_hat>("j_g_hat"),
      optional_int_field<&SweepRecord::offset>("offset"),
      optional_real_field<&SweepRecord::theta>("theta"),
      optional_real_field<&SweepRecord::phi>("phi"),
      optional_real_field<&SweepRecord::residual>("residual"),
      optional_real_field<&SweepRecord::subspace_rem_prob>("subspace_rem_prob"),
      optional_real_field<&SweepRecord::full_rem_prob>("full_rem_prob"),
      int_field<&SweepRecord::grk_j_l>("grk_j_l"),
      int_field<&SweepRecord::grk_j_g>("grk_j_g"),
      real_field<&SweepRecord::grk_success_prob>("grk_success_prob"),
      optional_int_field<&SweepRecord::oracle_queries>("oracle_queries"),
      FieldCodec{
          "status",
          [](const SweepRecord& r) { return std::string(to_string(r.status)); },
          [](SweepRecord& r, std::string_view s) { r.status = status_or_throw(s); },
          [](const SweepRecord& r) { return ordered_json(std::string(to_string(r.status))); },
          [](SweepRecord& r, const ordered_json& j) { r.status = status_or_throw(j.get<std::string>()); },
      },
  };
  return table;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void write_attempts(std::ostream& out, const PlanOutcome& outcome) {
  for (int i = 0; i < outcome.attempted; ++i) {
    const PlanAttempt& a = outcome.attempts[static_cast<std::size_t>(i)];
    out << "  offset " << i << ": j_l=" << a.counts.local << " j_g=" << a.counts.global
        << " x=" << format_double(a.aux.x) << " y=" << format_double(a.aux.y)
        << " z=" << format_double(a.aux.z) << " -> " << to_string(a.reason) << '\n';
  }
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kSolved: return "solved";
    case Status::kKnownFailure: return "known-failure";
    case Status::kUnexpectedFailure: return "unexpected-failure";
  }
  return "unknown";
}

std::optional<Status> parse_status(std::string_view text) {
  for (Status s : {Status::kSolved, Status::kKnownFailure, Status::kUnexpectedFailure}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

InstanceReport evaluate_instance(std::int64_t blocks, std::int64_t block_size, std::int64_t cert_cap) {
  const SearchGeometry g = make_geometry(blocks, block_size);
  const IdealCounts ideal = ideal_counts(g);

  InstanceReport report;
  report.outcome = plan_sure_success(g);
  report.baseline = plan_grk_baseline(g);

  SweepRecord& r = report.record;
  r.K = g.blocks;
  r.b = g.block_size;
  r.N = g.size;
  r.j_l_real = ideal.local;
  r.j_g_real = ideal.global;
  r.j_l_hat = candidate_counts(ideal)[0].local;
  r.grk_j_l = report.baseline.local_iterations;
  r.grk_j_g = report.baseline.global_iterations;
  r.grk_success_prob = report.baseline.success_probability;

  if (!report.outcome) {
    r.status = is_known_failure_instance(blocks, block_size) ? Status::kKnownFailure
                                                             : Status::kUnexpectedFailure;
    return report;
  }

  const IterationPlan& plan = *report.outcome.plan;
  r.status = Status::kSolved;
  r.j_l_hat = plan.local_iterations;
  r.j_g_hat = plan.global_iterations;
  r.offset = plan.offset;
  r.theta = plan.phases.theta;
  r.phi = plan.phases.phi;
  r.residual = plan.phases.residual;
  r.subspace_rem_prob = std::norm(run_plan(g, plan.steps()).rem);
  r.oracle_queries = plan.oracle_queries();

  if (g.size <= cert_cap) {
    report.certifications.push_back(certify_plan(g, plan.steps(), 0));
    report.certifications.push_back(certify_plan(g, plan.steps(), g.size - 1));
    r.full_rem_prob = report.certifications.front().probability_outside;
  }
  return report;
}

std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_instances(std::int64_t max_n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t k = 2; 2 * k <= max_n; ++k) {
    for (std::int64_t b = 2; k * b <= max_n; ++b) out.emplace_back(k, b);
  }
  return out;
}

std::vector<InstanceReport> run_sweep(const SweepOptions& options) {
  if (options.max_n < 4) {
    throw std::domain_error("sweep requires max_n >= 4, got " + std::to_string(options.max_n));
  }
  const auto instances = enumerate_instances(options.max_n);
  std::vector<InstanceReport> reports(instances.size());

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(instances.size(), 1)));

  // Largest instances first so the tail of the pool is not a single big N.
  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    return instances[lhs].first * instances[lhs].second > instances[rhs].first * instances[rhs].second;
  });

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      const auto [k, b] = instances[order[i]];
      reports[order[i]] = evaluate_instance(k, b, options.cert_cap);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  if (options.diagnostics != nullptr) {
    std::ostream& diag = *options.diagnostics;
    std::map<std::int64_t, std::size_t> offsets;
    std::size_t unexpected = 0;
    std::size_t known = 0;
    for (const InstanceReport& rep : reports) {
      const SweepRecord& r = rep.record;
      if (r.status == Status::kSolved) {
        ++offsets[*r.offset];
      } else if (r.status == Status::kKnownFailure) {
        ++known;
      } else {
        ++unexpected;
        diag << "unexpected failure K=" << r.K << " b=" << r.b << " N=" << r.N << '\n';
        write_attempts(diag, rep.outcome);
      }
    }
    if (reports.size() > 0 && is_known_failure_instance(reports.front().record.K, reports.front().record.b) &&
        reports.front().record.status == Status::kSolved) {
      diag << "note: K=2 b=2 was solved (offset " << *reports.front().record.offset
           << "), not reported as a known failure\n";
    }
    diag << "instances: " << reports.size() << ", solved offsets:";
    for (int o = 0; o <= kMaxGlobalOffset; ++o) diag << ' ' << o << '=' << offsets[o];
    diag << ", known-failure=" << known << ", unexpected-failure=" << unexpected << '\n';
  }
  return reports;
}

std::vector<SweepRecord> sweep(std::int64_t max_n, std::int64_t cert_cap) {
  std::vector<SweepRecord> records;
  for (InstanceReport& rep : run_sweep(SweepOptions{.max_n = max_n, .cert_cap = cert_cap})) {
    records.push_back(std::move(rep.record));
  }
  return records;
}

std::vector<std::string> record_field_names() {
  std::vector<std::string> names;
  for (const FieldCodec& f : fields()) names.emplace_back(f.name);
  return names;
}

std::string emit_csv(const std::vector<SweepRecord>& records) {
  std::string out;
  const auto& table = fields();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i != 0) out += ',';
    out += table[i].name;
  }
  out += '\n';
  for (const SweepRecord& r : records) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (i != 0) out += ',';
      out += table[i].write(r);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const std::vector<SweepRecord>& records) {
  ordered_json array = ordered_json::array();
  for (const SweepRecord& r : records) {
    ordered_json obj = ordered_json::object();
    for (const FieldCodec& f : fields()) obj[f.name] = f.to_json(r);
    array.push_back(std::move(obj));
  }
  return array.dump(2) + "\n";
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
  const auto& table = fields();
  std::vector<SweepRecord> records;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.size()) {
      throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " fields, expected " +
                                  std::to_string(table.size()));
    }
    if (header) {
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (cells[i] != table[i].name) {
          throw std::invalid_argument("unexpected CSV header field '" + std::string(cells[i]) + "'");
        }
      }
      header = false;
      continue;
    }
    SweepRecord r;
    for (std::size_t i = 0; i < table.size(); ++i) table[i].read(r, cells[i]);
    records.push_back(r);
  }
  if (header) throw std::invalid_argument("CSV input has no header row");
  return records;
}

std::vector<SweepRecord> parse_json(std::string_view text) {
  const ordered_json array = ordered_json::parse(text);
  if (!array.is_array()) throw std::invalid_argument("JSON report must be an array");
  std::vector<SweepRecord> records;
  for (const ordered_json& obj : array) {
    SweepRecord r;
    for (const FieldCodec& f : fields()) f.from_json(r, obj.at(f.name));
    records.push_back(r);
  }
  return records;
}

int exit_code_for(Status status) {
  switch (status) {
    case Status::kSolved: return kExitOk;
    case Status::kKnownFailure: return kExitKnownFailure;
    case Status::kUnexpectedFailure: return kExitUnexpectedFailure;
  }
  return kExitUnexpectedFailure;
}

int plan_command(std::int64_t blocks, std::int64_t block_size, std::int64_t cert_cap, OutputFormat format,
                 std::ostream& out, std::ostream& err) {
  InstanceReport rep;
  try {
    rep = evaluate_instance(blocks, block_size, cert_cap);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SweepRecord& r = rep.record;

  err << "K=" << r.K << " b=" << r.b << " N=" << r.N << '\n'
      << "ideal counts: j_l=" << format_double(r.j_l_real) << " j_g=" << format_double(r.j_g_real) << '\n';
  if (r.status == Status::kSolved) {
    err << "sure-success plan: j_l=" << r.j_l_hat << " j_g=" << *r.j_g_hat << " (offset " << *r.offset
        << "), oracle queries " << *r.oracle_queries << '\n'
        << "phases: theta=" << format_double(*r.theta) << " phi=" << format_double(*r.phi)
        << " residual=" << format_double(*r.residual) << '\n'
        << "remainder probability (3D): " << format_double(*r.subspace_rem_prob) << '\n';
    if (r.full_rem_prob) {
      err << "remainder probability (dense, N=" << r.N << "): " << format_double(*r.full_rem_prob) << '\n';
    } else {
      err << "dense certification skipped (N > " << cert_cap << ")\n";
    }
  } else {
    err << "no sure-success plan (" << to_string(r.status) << ")\n";
    write_attempts(err, rep.outcome);
  }
  err << "GRK baseline: j_l=" << r.grk_j_l << " j_g=" << r.grk_j_g
      << " success probability=" << format_double(r.grk_success_prob) << '\n';

  out << (format == OutputFormat::kCsv ? emit_csv({r}) : emit_json({r}));
  return exit_code_for(r.status);
}

int certify_command(std::int64_t blocks, std::int64_t block_size, std::int64_t solution_index,
                    std::int64_t cert_cap, std::ostream& out, std::ostream& err) {
  SearchGeometry g;
  try {
    g = make_geometry(blocks, block_size);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (g.size > cert_cap) {
    err << "error: N=" << g.size << " exceeds the certification cap " << cert_cap << '\n';
    return kExitUsage;
  }
  if (solution_index < 0 || solution_index >= g.size) {
    err << "error: solution index " << solution_index << " outside [0, " << g.size << ")\n";
    return kExitUsage;
  }
  const PlanOutcome outcome = plan_sure_success(g);
  if (!outcome) {
    err << "no sure-success plan for K=" << blocks << " b=" << block_size << '\n';
    write_attempts(err, outcome);
    return exit_code_for(is_known_failure_instance(blocks, block_size) ? Status::kKnownFailure
                                                                       : Status::kUnexpectedFailure);
  }
  const Certification c = certify_plan(g, outcome.plan->steps(), solution_index);
  ordered_json j = ordered_json::object();
  j["K"] = g.blocks;
  j["b"] = g.block_size;
  j["N"] = g.size;
  j["solution_index"] = c.solution_index;
  j["j_l_hat"] = outcome.plan->local_iterations;
  j["j_g_hat"] = outcome.plan->global_iterations;
  j["theta"] = outcome.plan->phases.theta;
  j["phi"] = outcome.plan->phases.phi;
  j["probability_outside"] = c.probability_outside;
  j["probability_inside"] = c.probability_inside;
  j["final_projection_error"] = c.final_projection_error;
  j["max_trajectory_error"] = c.max_trajectory_error;
  j["max_leakage"] = c.max_leakage;
  j["max_norm_defect"] = c.max_norm_defect;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace sure_search
