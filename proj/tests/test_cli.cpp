#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpcost/cli.hpp"
#include "dpcost/ingestion.hpp"
#include "dpcost/reporting.hpp"

using namespace dpcost;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DPCOST_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpcost_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, BoundariesOnExample) {
  const auto r = run({"boundaries", "--matrix", data("project_e.csv"), "--predictions", data("predictions_e.csv"),
                      "--kind", "const/n-m", "--p-qf", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "lower=1 upper=2 saving=true\n");
}

TEST(Cli, BoundariesUnboundedAndOtherViews) {
  const auto r = run({"boundaries", "--matrix", data("project_e.csv"), "--predictions", data("predictions_e.csv"),
                      "--kind", "const/1-m", "--p-qf", "0"});
  EXPECT_EQ(r.out, "lower=0.5 upper=2 saving=true\n");
}

TEST(Cli, CostPrintsProfits) {
  const auto r = run({"cost", "--matrix", data("project_e.csv"), "--predictions", data("predictions_e.csv"), "--kind",
                      "const/n-m", "--c-ratio", "10", "--p-qf", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "model=const/n-m\ncost=11\ncost_no_qa=20\ncost_all_qa=3\nprofit_vs_no_qa=9\nprofit_vs_all_qa=-8\n");
}

TEST(Cli, ValidateAndSummarize) {
  auto r = run({"validate", data("project_e.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok"), std::string::npos);

  r = run({"validate", data("zero_column.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("d2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;

  r = run({"summarize", data("project_e.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "project,n_artifacts,n_defective,n_defects,mean_members,mean_loc\nproject_e,3,2,2,1.50,53.33\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate", data("project_e.csv"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"boundaries", "--matrix", data("project_e.csv")}).code, 2);
  const auto r = run({"boundaries", "--matrix", data("project_e.csv"), "--predictions", data("predictions_e.csv"),
                      "--kind", "cheap/n-m", "--p-qf", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cheap/n-m"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DataErrorsExitOne) {
  EXPECT_EQ(run({"validate", data("missing.csv")}).code, 1);
  const auto r = run({"boundaries", "--matrix", data("project_e.csv"), "--predictions", data("predictions_e.csv"),
                      "--kind", "const/n-m", "--p-qf", "1.5"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliFiles, SimulateThenPlot) {
  auto r = run({"simulate", "--matrix", data("project_e.csv"), "--seed", "42", "--out", path("records.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("records.csv"));
  const auto records = parse_records_csv(in);
  EXPECT_EQ(records.size(), 22800u);
  EXPECT_EQ(records.front().project, "project_e");

  r = run({"plot", "--in", path("records.csv"), "--metric", "precision", "--kind", "const/n-m", "--out",
           path("plot.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto svg = slurp(path("plot.svg"));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(r.out.rfind("min_precision_bin_for_saving=", 0), 0u) << r.out;

  EXPECT_EQ(run({"plot", "--in", path("records.csv"), "--metric", "f1", "--kind", "const/n-m"}).code, 2);
}

TEST_F(CliFiles, SimulateJsonAndKindFilter) {
  const auto r = run({"simulate", "--matrix", data("project_e.csv"), "--seed", "1", "--reps", "2", "--acc-min", "0.5",
                      "--acc-max", "0.6", "--kind", "size/1-1", "--p-qf", "0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '[');
  std::size_t objects = 0;
  for (auto pos = r.out.find("\"relationship\": \"1-1\""); pos != std::string::npos;
       pos = r.out.find("\"relationship\": \"1-1\"", pos + 1)) {
    ++objects;
  }
  EXPECT_EQ(objects, 6u);  // three accuracies, two repetitions
}

TEST_F(CliFiles, SynthWritesParsableMatrix) {
  auto r = run({"synth", "--list"});
  EXPECT_NE(r.out.find("falcon\n"), std::string::npos);
  r = run({"synth", "--profile", "falcon", "--seed", "3", "--out", path("falcon.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"summarize", path("falcon.csv")});
  EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 19), "falcon,577,38,33,2.");
  EXPECT_EQ(run({"synth", "--profile", "nope", "--seed", "3"}).code, 2);
}
