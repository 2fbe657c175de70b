#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hlmax/cli.hpp"

using namespace hlmax;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse(const Outcome& o) { return Json::parse(o.out); }

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "hlmax_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, RatioEx3EndsNearFour) {
  const Outcome o = run({"ratio", "--preset", "ex3", "--y0", "0,0", "--rmax", "14"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = parse(o);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["kind"], "ratio");
  const auto& last = j["data"]["series"].back();
  EXPECT_EQ(last["r"], 14.0);
  EXPECT_NEAR(last["ratio"]["value"].get<double>(), 4, 0.01);
  EXPECT_EQ(last["ratio"]["exact"], "715828693/178957671");
}

TEST(Cli, RatioEx2NearOne) {
  const Outcome o = run({"ratio", "--preset", "ex2", "--rmax", "12"});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const auto& row : parse(o)["data"]["series"]) EXPECT_NEAR(row["ratio"]["value"].get<double>(), 1, 1e-4);
}

TEST(Cli, MissingPresetIsUsageError) {
  EXPECT_EQ(run({"ratio", "--rmax", "12"}).code, 1);
  EXPECT_EQ(run({"ratio", "--preset", "ex7"}).code, 1);
  EXPECT_EQ(run({"ratio", "--preset", "ex3", "--weights", "w.csv"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST(Cli, MaximalCentredSeriesGrows) {
  const Outcome o = run({"maximal", "--preset", "ex1", "--point", "0", "--centered", "--radii", "1:8"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = parse(o);
  const auto& series = j["data"][0]["series"];
  ASSERT_EQ(series.size(), 8u);
  double prev = 0;
  for (const auto& rec : series) {
    const double v = rec["average"]["value"].get<double>();
    EXPECT_GT(v, prev);
    prev = v;
    EXPECT_TRUE(rec["log_domain"].get<bool>());
  }
  EXPECT_NEAR(prev, 3.96824145207063, 1e-8);
}

TEST(Cli, MaximalNoncentredEx3) {
  const Outcome o = run({"maximal", "--preset", "ex3", "--point", "-1,0", "--noncentered", "--window", "40"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json d = parse(o)["data"][0];
  EXPECT_LE(d["sup"]["value"].get<double>(), 4.0);
  // the supremum creeps up on 3/8 from below as the window grows
  EXPECT_EQ(d["sup"]["exact"].get<std::string>(), "302231454903657293676542/805950546409752783143611");
  EXPECT_LT(d["sup"]["value"].get<double>(), 0.375 + 1e-15);
}

TEST(Cli, MaximalSingletonBall) {
  const Outcome o = run({"maximal", "--preset", "ex3", "--point", "1,0", "--centered", "--radii", "0.5"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(parse(o)["data"][0]["sup"]["exact"], "2");
}

TEST(Cli, MaximalRequiresMode) {
  EXPECT_EQ(run({"maximal", "--preset", "ex3", "--point", "1,0"}).code, 1);
  EXPECT_EQ(run({"maximal", "--preset", "ex3", "--point", "1,0,3", "--centered", "--radii", "1"}).code, 1);
  EXPECT_EQ(run({"maximal", "--preset", "ex3", "--point", "1,0", "--centered", "--radii", "x"}).code, 1);
}

TEST(Cli, EvaluationErrorExitsTwo) {
  // a radius-0.3 ball around a non-lattice point holds no lattice site
  const Outcome o = run({"maximal", "--preset", "ex3", "--point", "0.5,0.5", "--centered", "--radii", "0.3"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("EMPTY_BALL"), std::string::npos);
}

TEST(Cli, ReproduceEx4Passes) {
  const Outcome o = run({"reproduce", "--example", "ex4", "--nmax", "12"});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const auto& c : parse(o)["data"]) EXPECT_TRUE(c["pass"].get<bool>());
}

TEST(Cli, ReproduceFailureExitsThree) {
  const Outcome o = run({"reproduce", "--example", "ex4", "--nmin", "5", "--nmax", "5", "--claim", "plus_lower"});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("plus_lower"), std::string::npos);
}

TEST(Cli, ReproduceTable1) {
  const Outcome o = run({"reproduce", "--table1", "--window", "24", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out,
            "example,dp_noncentered,dp_centered,expected_noncentered,expected_centered,match\n"
            "EX1,1,0,1,0,1\nEX2,1,1,1,1,1\nEX3,0,1,0,1,1\nEX4,0,0,0,0,1\n");
}

TEST(Cli, ReproduceEx5Depth6) {
  const Outcome o = run({"reproduce", "--example", "ex5", "--depth", "6", "--claim", "average", "--format", "table"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, OracleCheck) {
  EXPECT_EQ(run({"oracle-check", "--seed", "7", "--count", "5", "--window", "4"}).code, 0);
  const Outcome none = run({"oracle-check", "--count", "0"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(parse(none)["data"]["compared"], 0);
  const Outcome bad = run({"oracle-check", "--count", "5", "--corrupt-fast-path"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("n,m,weight,value"), std::string::npos);
}

TEST(Cli, Thm2) {
  const Outcome demo = run({"thm2", "--preset", "thm2-demo", "--depth", "4"});
  ASSERT_EQ(demo.code, 0) << demo.err;
  EXPECT_EQ(parse(demo)["data"]["status"], "VERIFIED");
  EXPECT_EQ(run({"thm2", "--preset", "ex2d-unit"}).code, 4);
  EXPECT_EQ(run({"thm2", "--preset", "ex3"}).code, 4);
  EXPECT_EQ(run({"thm2", "--preset", "ex1"}).code, 1);
}

TEST(Cli, JsonIsByteIdentical) {
  const std::vector<std::string> args{"oracle-check", "--seed", "11", "--count", "3"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> ex1{"reproduce", "--example", "ex1", "--claim", "shift"};
  EXPECT_EQ(run(ex1).out, run(ex1).out);
}

TEST(Cli, CsvHasStableHeader) {
  const Outcome o = run({"maximal", "--preset", "ex3", "--point", "2,0", "--centered", "--radii", "1:3", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')),
            "center_x,center_y,radius,metric,mass,integral,average,log_average,log_domain");
}

TEST(Cli, LogPrefixedNumbers) {
  const Outcome o = run({"ratio", "--preset", "ex3", "--rmin", "2", "--rmax", "log:1.6094379124341003"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(parse(o)["data"]["series"].size(), 4u);  // r = 2..5
}

TEST(Cli, WeightsAndFunctionFromCsv) {
  const auto dir = temp_dir();
  {
    std::ofstream w(dir / "w.csv");
    w << "n,m,weight\n0,0,3\n1,0,1\n";
    std::ofstream f(dir / "f.csv");
    f << "n,m,value\n0,0,2\n1,0,5\n";
  }
  const Outcome o = run({"maximal", "--weights", (dir / "w.csv").string(), "--function", (dir / "f.csv").string(),
                         "--point", "0,0", "--centered", "--radii", "0.5,1.5", "--metric", "supremum"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = parse(o);
  const auto& series = j["data"][0]["series"];
  EXPECT_EQ(series[0]["average"]["exact"].get<std::string>(), "2");
  // radius 1.5 covers the 3x3 block: (3*2 + 1*5) / (3 + 8)
  EXPECT_EQ(series[1]["average"]["exact"].get<std::string>(), "1");
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = temp_dir();
  ::setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  const Outcome o = run({"ratio", "--preset", "ex3", "--rmax", "4", "--output", "ratio.json"});
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(dir / "ratio.json");
  ASSERT_TRUE(in.good());
  EXPECT_EQ(Json::parse(in)["schema"], 1);
}

TEST(Cli, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(HLMAX_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("ratio --preset ex2 --rmax 12"), 0);
  EXPECT_EQ(status("ratio"), 1);
  EXPECT_EQ(status("thm2 --preset ex2d-unit"), 4);
  EXPECT_EQ(status("--help"), 0);
}
