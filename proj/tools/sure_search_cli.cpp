#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sure_search/harness.hpp"

namespace {

using sure_search::OutputFormat;

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return sure_search::kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return sure_search::kExitUsage;
  }
  file << text;
  return sure_search::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sure-success quantum partial search planner"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::kCsv}, {"json", OutputFormat::kJson}};
  OutputFormat format = OutputFormat::kCsv;
  std::int64_t cert_cap = sure_search::kDefaultCertCap;
  std::string out_path;

  auto* sweep_cmd = app.add_subcommand("sweep", "Plan every (K, b) with K*b <= max-n");
  std::int64_t max_n = 10000;
  sweep_cmd->add_option("--max-n", max_n, "Largest database size N = K*b")->check(CLI::Range(std::int64_t{4}, INT64_MAX));
  sweep_cmd->add_option("--cert-cap", cert_cap, "Largest N certified by dense simulation")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--format", format, "Report format")->transform(CLI::CheckedTransformer(formats));
  sweep_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  std::int64_t blocks = 0;
  std::int64_t block_size = 0;
  auto* plan_cmd = app.add_subcommand("plan", "Plan and report a single instance");
  plan_cmd->add_option("K", blocks, "Number of blocks")->required();
  plan_cmd->add_option("b", block_size, "Block size")->required();
  plan_cmd->add_option("--cert-cap", cert_cap, "Largest N certified by dense simulation")->check(CLI::NonNegativeNumber);
  plan_cmd->add_option("--format", format, "Record format")->transform(CLI::CheckedTransformer(formats));
  plan_cmd->add_option("--out", out_path, "Write the record here instead of stdout");

  std::int64_t solution_index = 0;
  auto* certify_cmd = app.add_subcommand("certify", "Plan one instance and certify it by dense simulation");
  certify_cmd->add_option("K", blocks, "Number of blocks")->required();
  certify_cmd->add_option("b", block_size, "Block size")->required();
  certify_cmd->add_option("--solution-index", solution_index, "Position of the marked element");
  certify_cmd->add_option("--cert-cap", cert_cap, "Largest N accepted for dense simulation")->check(CLI::NonNegativeNumber);
  certify_cmd->add_option("--out", out_path, "Write the certification here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sure_search::kExitUsage;
  }

  std::ostringstream body;
  int status = sure_search::kExitOk;

  if (*sweep_cmd) {
    const auto reports = sure_search::run_sweep(
        sure_search::SweepOptions{.max_n = max_n, .cert_cap = cert_cap, .diagnostics = &std::cerr});
    std::vector<sure_search::SweepRecord> records;
    records.reserve(reports.size());
    for (const auto& rep : reports) {
      records.push_back(rep.record);
      if (rep.record.status == sure_search::Status::kUnexpectedFailure) status = sure_search::kExitUnexpectedFailure;
    }
    body << (format == OutputFormat::kCsv ? sure_search::emit_csv(records) : sure_search::emit_json(records));
  } else if (*plan_cmd) {
    status = sure_search::plan_command(blocks, block_size, cert_cap, format, body, std::cerr);
  } else if (*certify_cmd) {
    status = sure_search::certify_command(blocks, block_size, solution_index, cert_cap, body, std::cerr);
  }

  if (status == sure_search::kExitUsage) return status;
  const int written = write_output(out_path, body.str());
  return written != sure_search::kExitOk ? written : status;
}
