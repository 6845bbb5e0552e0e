#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "sure_search/harness.hpp"

using namespace sure_search;

TEST(Enumerate, CountsMatchDirectCount) {
  for (std::int64_t m : {4, 5, 16, 100, 1000}) {
    std::size_t expected = 0;
    for (std::int64_t k = 2; k <= m; ++k)
      for (std::int64_t b = 2; b <= m; ++b) expected += (k * b <= m);
    EXPECT_EQ(enumerate_instances(m).size(), expected) << m;
  }
  const auto first = enumerate_instances(16);
  EXPECT_EQ(first.front(), (std::pair<std::int64_t, std::int64_t>{2, 2}));
  EXPECT_EQ(first[1], (std::pair<std::int64_t, std::int64_t>{2, 3}));
  EXPECT_EQ(first.back(), (std::pair<std::int64_t, std::int64_t>{8, 2}));
}

TEST(Sweep, SmallSweep) {
  const auto records = sweep(16);
  ASSERT_EQ(records.size(), enumerate_instances(16).size());
  for (const SweepRecord& r : records) {
    EXPECT_EQ(r.N, r.K * r.b);
    if (!(r.K == 2 && r.b == 2)) {
      EXPECT_EQ(r.status, Status::kSolved) << r.K << "x" << r.b;
    }
    if (r.status == Status::kSolved) {
      EXPECT_LT(*r.residual, 1e-10);
      EXPECT_LT(*r.subspace_rem_prob, 1e-18);
      ASSERT_TRUE(r.full_rem_prob);
      EXPECT_LT(*r.full_rem_prob, 1e-9);
      EXPECT_EQ(*r.oracle_queries, r.j_l_hat + *r.j_g_hat + 1);
    }
    EXPECT_LE(r.grk_success_prob, 1.0);
  }
}

TEST(Sweep, CertCapOmitsDenseProbability) {
  const auto reports = run_sweep(SweepOptions{.max_n = 30, .cert_cap = 12, .threads = 3});
  for (const InstanceReport& rep : reports) {
    if (rep.record.status != Status::kSolved) continue;
    EXPECT_EQ(rep.record.full_rem_prob.has_value(), rep.record.N <= 12);
    EXPECT_EQ(rep.certifications.size(), rep.record.N <= 12 ? 2u : 0u);
  }
}

TEST(Sweep, RejectsTinyMaxN) { EXPECT_THROW(sweep(3), std::domain_error); }

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  std::vector<SweepRecord> one, many;
  for (auto& rep : run_sweep({.max_n = 200, .threads = 1})) one.push_back(rep.record);
  for (auto& rep : run_sweep({.max_n = 200, .threads = 4})) many.push_back(rep.record);
  EXPECT_EQ(emit_csv(one), emit_csv(many));
}

TEST(Sweep, DiagnosticsFooter) {
  std::ostringstream diag;
  run_sweep({.max_n = 50, .diagnostics = &diag});
  EXPECT_NE(diag.str().find("solved offsets: 0="), std::string::npos) << diag.str();
  EXPECT_NE(diag.str().find("unexpected-failure=0"), std::string::npos) << diag.str();
}

TEST(Emit, EmptyRecords) {
  EXPECT_EQ(emit_csv({}),
            "K,b,N,j_l_real,j_g_real,j_l_hat,j_g_hat,offset,theta,phi,residual,subspace_rem_prob,"
            "full_rem_prob,grk_j_l,grk_j_g,grk_success_prob,oracle_queries,status\n");
  EXPECT_EQ(emit_json({}), "[]\n");
}

TEST(Emit, SolvedRow) {
  const SweepRecord r = evaluate_instance(4, 4).record;
  const std::string csv = emit_csv({r});
  const std::string row = csv.substr(csv.find('\n') + 1);
  EXPECT_EQ(row.rfind("4,4,16,", 0), 0u) << row;
  EXPECT_NE(row.find(",solved\n"), std::string::npos) << row;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 17);
}

TEST(Emit, JsonKeysMatchCsvHeader) {
  const std::string json = emit_json({evaluate_instance(3, 5).record});
  std::size_t pos = 0;
  for (const std::string& name : record_field_names()) {
    const std::size_t at = json.find("\"" + name + "\"", pos);
    ASSERT_NE(at, std::string::npos) << name;
    pos = at;
  }
}

TEST(Emit, RoundTripIsBitExact) {
  std::vector<SweepRecord> records;
  for (auto& rep : run_sweep({.max_n = 60, .cert_cap = 40})) records.push_back(rep.record);
  SweepRecord odd = records.back();
  odd.status = Status::kUnexpectedFailure;
  odd.j_l_real = std::nextafter(1.0, 2.0);
  odd.grk_success_prob = 5e-324;
  records.push_back(odd);

  EXPECT_EQ(parse_csv(emit_csv(records)), records);
  EXPECT_EQ(parse_json(emit_json(records)), records);
}

TEST(Emit, ParseRejectsMalformed) {
  EXPECT_THROW(parse_csv(""), std::invalid_argument);
  EXPECT_THROW(parse_csv("K,b\n1,2\n"), std::invalid_argument);
  std::string csv = emit_csv({evaluate_instance(3, 3).record});
  csv.replace(csv.find("solved"), 6, "bogus!");
  EXPECT_THROW(parse_csv(csv), std::invalid_argument);
}

TEST(PlanCommand, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(plan_command(4, 4, kDefaultCertCap, OutputFormat::kCsv, out, err), kExitOk);
  EXPECT_NE(out.str().find("solved"), std::string::npos);
  EXPECT_NE(err.str().find("sure-success plan"), std::string::npos);

  std::ostringstream out2, err2;
  EXPECT_EQ(plan_command(1, 4, kDefaultCertCap, OutputFormat::kJson, out2, err2), kExitUsage);
  EXPECT_TRUE(out2.str().empty());
}

TEST(PlanCommand, JsonRecordParses) {
  std::ostringstream out, err;
  ASSERT_EQ(plan_command(6, 10, kDefaultCertCap, OutputFormat::kJson, out, err), kExitOk);
  const auto records = parse_json(out.str());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].N, 60);
}

TEST(CertifyCommand, Reports) {
  std::ostringstream out, err;
  EXPECT_EQ(certify_command(4, 4, 9, kDefaultCertCap, out, err), kExitOk);
  EXPECT_NE(out.str().find("\"probability_outside\""), std::string::npos);
  std::ostringstream out2, err2;
  EXPECT_EQ(certify_command(4, 4, 16, kDefaultCertCap, out2, err2), kExitUsage);
  EXPECT_EQ(certify_command(100, 100, 0, kDefaultCertCap, out2, err2), kExitUsage);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(Status::kSolved), 0);
  EXPECT_EQ(exit_code_for(Status::kKnownFailure), 2);
  EXPECT_EQ(exit_code_for(Status::kUnexpectedFailure), 3);
}
