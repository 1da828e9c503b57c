#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dvrp/io.hpp"
#include "scenarios.hpp"

namespace dvrp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dvrp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const json& doc) {
    const fs::path p = dir_ / name;
    write_text_file(p, doc.dump());
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(CliTest, SolveTwoCustomers) {
  const auto file = write("i.json", to_json(testing::two_customer_square()));
  const Outcome r = run({"solve", "--instance", file, "--improvement", "none"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["cost"].get<double>(), 20.0 + 10.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NE(r.err.find("cost=34.14"), std::string::npos);
}

TEST_F(CliTest, SolveWritesFile) {
  const auto file = write("i.json", to_json(testing::two_customer_square()));
  const Outcome r = run({"solve", "--instance", file, "--out", path("s.json"),
                         "--improvement", "simulated-annealing", "--max-iters", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Solution s = solution_from_json(read_json_file(path("s.json")));
  EXPECT_EQ(s.trips.size(), 1u);
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  EXPECT_EQ(run({"solve", "--instance", path("missing.json")}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({}).code, cli::kInputError);

  const auto file = write("i.json", to_json(testing::two_customer_square()));
  EXPECT_EQ(run({"solve", "--instance", file, "--improvement", "hill-climb"}).code,
            cli::kInputError);
  EXPECT_EQ(run({"solve", "--instance", file, "--construction", "sweep"}).code, cli::kInputError);
  EXPECT_EQ(run({"solve", "--instance", file, "--time-limit", "0", "--max-iters", "0"}).code,
            cli::kInputError);

  json heavy = to_json(testing::two_customer_square());
  heavy["customers"][1]["demand"] = 25;
  const Outcome r = run({"solve", "--instance", write("heavy.json", heavy)});
  EXPECT_EQ(r.code, cli::kInfeasible);
  EXPECT_NE(r.err.find("customer 2"), std::string::npos) << r.err;

  json tight = to_json(testing::two_customer_square());
  tight["capacity"] = 5;
  EXPECT_EQ(run({"solve", "--instance", write("tight.json", tight)}).code, cli::kInfeasible);
  EXPECT_EQ(run({"solve", "--instance", path("tight.json"), "--fleet-policy", "repair"}).code,
            cli::kInfeasible);
}

TEST_F(CliTest, SolveRefusesDynamicInstanceUnlessAsked) {
  json doc = to_json(testing::refill_scenario());
  const auto file = write("r.json", doc);
  EXPECT_EQ(run({"solve", "--instance", file}).code, cli::kInputError);
  // Served at once, the three demands need two trips from one vehicle.
  EXPECT_EQ(run({"solve", "--instance", file, "--ignore-release"}).code, cli::kInfeasible);
  doc["capacity"] = 12;
  const Outcome r = run({"solve", "--instance", write("r12.json", doc), "--ignore-release"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, SimulateAllStaticMatchesSolve) {
  const auto file = write("i.json", to_json(testing::two_customer_square()));
  const Outcome solved = run({"solve", "--instance", file, "--seed", "4"});
  const Outcome simulated = run({"simulate", "--instance", file, "--seed", "4"});
  ASSERT_EQ(solved.code, 0);
  ASSERT_EQ(simulated.code, 0);
  const double cost = json::parse(solved.out)["cost"];
  char expected[64];
  std::snprintf(expected, sizeof expected, "cost=%.2f", cost);
  EXPECT_EQ(simulated.err.rfind(expected, 0), 0u) << simulated.err;
}

TEST_F(CliTest, SimulateTimelineIsReproducible) {
  const auto file = write("r.json", to_json(testing::refill_scenario()));
  const Outcome a = run({"simulate", "--instance", file, "--seed", "9"});
  const Outcome b = run({"simulate", "--instance", file, "--seed", "9"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"action\":\"reload\""), std::string::npos);
  std::istringstream lines(a.out);
  std::string line;
  while (std::getline(lines, line)) EXPECT_NO_THROW(json::parse(line));
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto file = write("i.json", to_json(testing::two_customer_square()));
  const auto config = write("c.json", {{"instance", file},
                                       {"construction", "sweep"},
                                       {"improvement", {{"method", "guided-local-search"},
                                                        {"gls_lambda_factor", 0.2}}}});
  EXPECT_EQ(run({"solve", "--config", config}).code, cli::kInputError);
  const Outcome r = run({"solve", "--config", config, "--construction", "savings"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("savings+guided-local-search"), std::string::npos);
  const auto bad = write("b.json", {{"instance", file}, {"improvement", {{"tenure", 3}}}});
  EXPECT_EQ(run({"solve", "--config", bad}).code, cli::kInputError);
}

TEST_F(CliTest, QuickBench) {
  const Outcome r = run({"bench", "--reps", "1", "--max-iters", "50", "--time-limit", "0",
                         "--out", path("report")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(path("report.csv")));
  std::string line;
  int rows = 0;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.size() - 4), ",,,1") << line;
  }
  EXPECT_EQ(rows, 9);
  EXPECT_EQ(json::parse(slurp(path("report.json")))["rows"].size(), 9u);
}

TEST_F(CliTest, GenIsDeterministic) {
  const Outcome a = run({"gen", "--static", "5", "--dynamic", "3", "--seed", "11"});
  const Outcome b = run({"gen", "--static", "5", "--dynamic", "3", "--seed", "11"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Instance instance = instance_from_json(json::parse(a.out));
  EXPECT_EQ(instance.size(), 8u);
  EXPECT_NE(run({"gen", "--seed", "12"}).out, run({"gen", "--seed", "11"}).out);
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

}  // namespace
}  // namespace dvrp
