#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vzor/cli.hpp"

namespace vzor {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("vzor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    spit(dir / "small.conf",
         "registry_size = 20\ncommittee_size = 7\nquorum = 5\nepochs = 24\nfraud_period = 8\n");
  }
  void TearDown() override { fs::remove_all(dir); }

  int run_small(const fs::path& out) {
    return cli::cmd_run({(dir / "small.conf").string(), out.string(), std::nullopt}, sout, serr);
  }

  fs::path dir;
  std::ostringstream sout, serr;
};

TEST_F(CliTest, RunWritesAllOutputs) {
  ASSERT_EQ(run_small(dir / "out"), cli::kExitOk) << serr.str();
  for (const char* f : {cli::kTraceFile, cli::kEpochsFile, cli::kMetricsFile, cli::kConfigFile, cli::kPulsesFile}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  for (const auto& entry : fs::directory_iterator(dir / "out")) {
    EXPECT_NE(entry.path().extension(), ".tmp");
  }
  const auto metrics = nlohmann::json::parse(slurp(dir / "out" / cli::kMetricsFile));
  EXPECT_EQ(metrics.at("epochs").get<int>(), 24);
  std::istringstream csv(slurp(dir / "out" / cli::kEpochsFile));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("epoch,committee_ids,median,accepted_sepolia,accepted_scroll,gas_sepolia,gas_scroll", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 24);
}

TEST_F(CliTest, RunIsByteIdentical) {
  ASSERT_EQ(run_small(dir / "a"), cli::kExitOk);
  ASSERT_EQ(run_small(dir / "b"), cli::kExitOk);
  for (const char* f : {cli::kTraceFile, cli::kEpochsFile, cli::kMetricsFile, cli::kConfigFile, cli::kPulsesFile}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST_F(CliTest, SeedOverrideChangesRun) {
  ASSERT_EQ(run_small(dir / "a"), cli::kExitOk);
  ASSERT_EQ(cli::cmd_run({(dir / "small.conf").string(), (dir / "b").string(), 5}, sout, serr), cli::kExitOk);
  EXPECT_NE(slurp(dir / "a" / cli::kTraceFile), slurp(dir / "b" / cli::kTraceFile));
  EXPECT_NE(slurp(dir / "b" / cli::kConfigFile).find("seed = 5"), std::string::npos);
}

TEST_F(CliTest, RunExitCodes) {
  spit(dir / "bad.conf", "committee_size = 5\nquorum = 6\n");
  EXPECT_EQ(cli::cmd_run({(dir / "bad.conf").string(), (dir / "o").string(), {}}, sout, serr), cli::kExitInvalid);
  EXPECT_NE(serr.str().find("f_min"), std::string::npos) << serr.str();
  spit(dir / "garbage.conf", "this is not a config\n");
  EXPECT_EQ(cli::cmd_run({(dir / "garbage.conf").string(), (dir / "o").string(), {}}, sout, serr), cli::kExitParse);
  EXPECT_EQ(cli::cmd_run({(dir / "missing.conf").string(), (dir / "o").string(), {}}, sout, serr), cli::kExitParse);
  EXPECT_FALSE(fs::exists(dir / "o" / cli::kTraceFile));
}

TEST_F(CliTest, VerifyTraceAcceptsOwnOutput) {
  ASSERT_EQ(run_small(dir / "out"), cli::kExitOk);
  EXPECT_EQ(cli::cmd_verify_trace((dir / "out" / cli::kTraceFile).string(), sout, serr), cli::kExitOk) << serr.str();
}

TEST_F(CliTest, VerifyTraceFlagsFlippedReceipt) {
  ASSERT_EQ(run_small(dir / "out"), cli::kExitOk);
  std::istringstream in(slurp(dir / "out" / cli::kTraceFile));
  std::ostringstream mutated;
  bool flipped = false;
  int epoch = -1;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    if (!flipped && j.at("type") == "receipt" && j.at("epoch").get<int>() == 3) {
      j["accepted"] = !j["accepted"].get<bool>();
      epoch = j.at("epoch").get<int>();
      flipped = true;
      line = j.dump();
    }
    mutated << line << '\n';
  }
  ASSERT_TRUE(flipped);
  spit(dir / "bad.jsonl", mutated.str());
  EXPECT_EQ(cli::cmd_verify_trace((dir / "bad.jsonl").string(), sout, serr), cli::kExitMismatch);
  EXPECT_NE(serr.str().find("mismatched epochs: " + std::to_string(epoch)), std::string::npos) << serr.str();
}

TEST_F(CliTest, VerifyTraceCorruptInputs) {
  spit(dir / "empty.jsonl", "");
  EXPECT_EQ(cli::cmd_verify_trace((dir / "empty.jsonl").string(), sout, serr), cli::kExitParse);
  spit(dir / "junk.jsonl", "{not json\n");
  EXPECT_EQ(cli::cmd_verify_trace((dir / "junk.jsonl").string(), sout, serr), cli::kExitParse);
  EXPECT_EQ(cli::cmd_verify_trace((dir / "none.jsonl").string(), sout, serr), cli::kExitParse);
  ASSERT_EQ(run_small(dir / "out"), cli::kExitOk);
  const std::string good = slurp(dir / "out" / cli::kTraceFile);
  spit(dir / "cut.jsonl", good.substr(good.find('\n') + 1));  // header dropped
  EXPECT_EQ(cli::cmd_verify_trace((dir / "cut.jsonl").string(), sout, serr), cli::kExitParse);
}

TEST_F(CliTest, SweepRejectsBadRequests) {
  const std::string conf = (dir / "small.conf").string();
  EXPECT_EQ(cli::cmd_sweep({conf, "bogus", {"1"}, (dir / "s").string()}, sout, serr), cli::kExitInvalid);
  EXPECT_EQ(cli::cmd_sweep({conf, "n", {}, (dir / "s").string()}, sout, serr), cli::kExitInvalid);
  // one invalid value fails the whole sweep before anything runs
  EXPECT_EQ(cli::cmd_sweep({conf, "n", {"7", "3"}, (dir / "s").string()}, sout, serr), cli::kExitInvalid);
  EXPECT_FALSE(fs::exists(dir / "s"));
  EXPECT_EQ(cli::split_values("5, 10,15"), (std::vector<std::string>{"5", "10", "15"}));
  EXPECT_TRUE(cli::split_values("").empty());
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out(1);
  for (const char c : line) {
    if (c == ',') out.emplace_back();
    else out.back().push_back(c);
  }
  return out;
}

std::vector<std::map<std::string, std::string>> read_sweep(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  const std::vector<std::string> cols = cells_of(line);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    const auto cells = cells_of(line);
    EXPECT_EQ(cells.size(), cols.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = cells.at(i);
    rows.push_back(row);
  }
  return rows;
}

TEST_F(CliTest, SweepCommitteeSizeKeepsVerifyGasConstant) {
  spit(dir / "sweep.conf", "registry_size = 20\nquorum = 5\nepochs = 12\nfraud_period = 0\n");
  ASSERT_EQ(cli::cmd_sweep({(dir / "sweep.conf").string(), "n", {"5", "10", "15"}, (dir / "s").string()}, sout, serr),
            cli::kExitOk)
      << serr.str();
  const auto rows = read_sweep(dir / "s" / cli::kSweepFile);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.at("verify_gas_sepolia"), "296112");
    EXPECT_EQ(r.at("verify_gas_scroll"), "88029");
    EXPECT_EQ(r.at("accepted_packets"), "12");
  }
  EXPECT_TRUE(fs::exists(dir / "s" / "n_10" / cli::kTraceFile));
}

TEST_F(CliTest, SweepAdversaryCountStaysSafe) {
  spit(dir / "sweep.conf",
       "registry_size = 20\ncommittee_size = 11\nquorum = 6\nepochs = 20\nadversary_behavior = wrong_value\n");
  ASSERT_EQ(cli::cmd_sweep({(dir / "sweep.conf").string(), "b", {"0", "1", "2", "3", "4", "5"}, (dir / "s").string()},
                           sout, serr),
            cli::kExitOk)
      << serr.str();
  for (const auto& r : read_sweep(dir / "s" / cli::kSweepFile)) EXPECT_EQ(r.at("safety_violations"), "0");
  std::ostringstream a, b;
  ASSERT_EQ(cli::cmd_sweep({(dir / "sweep.conf").string(), "b", {"2"}, (dir / "t").string()}, a, b), cli::kExitOk);
  EXPECT_EQ(slurp(dir / "s" / "b_2" / cli::kTraceFile), slurp(dir / "t" / "b_2" / cli::kTraceFile));
}

}  // namespace
}  // namespace vzor
