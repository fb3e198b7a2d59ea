#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"

namespace cci {
namespace {

namespace fs = std::filesystem;

const std::string kFixtures = CCI_DATA_DIR "/fixtures";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cci_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, sep);) out.push_back(cell);
  return out;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(CCI_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliSolve, CrossingSegmentsDocument) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_solve(kFixtures + "/crossing_segments.json", {}, "", out, err), cli::kOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["problem"], "crossing_segments");
  EXPECT_EQ(doc["report"]["squares_examined"], 5);
  EXPECT_EQ(doc["report"]["truncated"], false);
  ASSERT_EQ(doc["intersections"].size(), 1u);
  EXPECT_DOUBLE_EQ(doc["intersections"][0]["u"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(doc["intersections"][0]["v"].get<double>(), 0.5);
}

TEST(CliSolve, DisjointSegments) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_solve(kFixtures + "/disjoint_segments.json", {}, "", out, err), cli::kOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_TRUE(doc["intersections"].empty());
  EXPECT_EQ(doc["report"]["squares_examined"], 1);
}

TEST(CliSolve, MalformedFileNamesLine) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_solve(kFixtures + "/malformed_count.json", {}, "", out, err), cli::kInputError);
  EXPECT_NE(err.str().find("malformed_count.json:4:"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("curve2"), std::string::npos);
  EXPECT_TRUE(out.str().empty());
}

TEST(CliSolve, MissingFile) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_solve(kFixtures + "/does_not_exist.json", {}, "", out, err), cli::kInputError);
  EXPECT_FALSE(err.str().empty());
}

TEST(CliSolve, ResultRoundTrip) {
  const auto dir = scratch_dir("roundtrip");
  std::ostringstream out, err;
  SolverConfig cfg;
  cfg.mode = AlphaMode::fixed;
  ASSERT_EQ(cli::cmd_solve(kFixtures + "/crossing_segments.json", cfg, (dir / "r.json").string(), out, err),
            cli::kOk);
  EXPECT_TRUE(out.str().empty());
  std::ifstream in(dir / "r.json");
  const auto doc = nlohmann::json::parse(in);
  const auto p = load_problem(kFixtures + "/crossing_segments.json");
  const auto r = solve(p.curve1, p.curve2, cfg);
  EXPECT_EQ(doc["config"]["mode"], "fixed");
  EXPECT_EQ(doc["report"]["squares_examined"].get<long>(), r.squares_examined);
  EXPECT_EQ(doc["report"]["subdivisions"].get<long>(), r.subdivisions);
  EXPECT_EQ(doc["report"]["kantorovich_passes"].get<long>(), r.kantorovich_passes);
  EXPECT_EQ(doc["intersections"][0]["u"].get<double>(), r.intersections[0].u);
}

TEST(CliSolve, TruncationExitCode) {
  std::ostringstream out, err;
  SolverConfig cfg;
  cfg.max_depth = 12;
  EXPECT_EQ(cli::cmd_solve(kFixtures + "/tangent_parabola.json", cfg, "", out, err), cli::kTruncated);
  EXPECT_NE(err.str().find("max depth"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(out.str())["report"]["truncated"], true);
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(run_tool("solve " + kFixtures + "/crossing_segments.json"), 0);
  EXPECT_EQ(run_tool("solve " + kFixtures + "/malformed_count.json"), 1);
  EXPECT_EQ(run_tool("solve " + kFixtures + "/tangent_parabola.json --max-depth 10"), 2);
  EXPECT_NE(run_tool("solve"), 0);
  EXPECT_NE(run_tool("solve " + kFixtures + "/crossing_segments.json --mode sideways"), 0);
}

TEST(CliBench, TableStructure) {
  const auto dir = scratch_dir("bench");
  fs::copy(kFixtures + "/crossing_segments.json", dir);
  fs::copy(kFixtures + "/disjoint_segments.json", dir);
  std::ostringstream table, err;
  cli::BenchOptions opts;
  opts.epsilons = {0.0, 0.05, 0.1};
  ASSERT_EQ(cli::cmd_bench(dir.string(), opts, table, err), cli::kOk) << err.str();
  const auto lines = lines_of(table.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "problem,degree_m,degree_n,akts_eps_0,akts_eps_0.05,akts_eps_0.1,kts_cc,truncated");
  const auto row = split(lines[1]);
  ASSERT_EQ(row.size(), 8u);
  EXPECT_EQ(row[0], "crossing_segments");
  EXPECT_EQ(row[1], "1");
  EXPECT_EQ(row[3], row[6]);  // epsilon 0 reproduces the fixed baseline
  EXPECT_EQ(row[7], "no");
  EXPECT_EQ(split(lines[2])[0], "disjoint_segments");
}

TEST(CliBench, SingleProblemAndBadFile) {
  const auto dir = scratch_dir("bench_single");
  fs::copy(kFixtures + "/crossing_segments.json", dir);
  std::ostringstream table, err;
  ASSERT_EQ(cli::cmd_bench(dir.string(), {}, table, err), cli::kOk);
  EXPECT_EQ(lines_of(table.str()).size(), 2u);

  fs::copy(kFixtures + "/malformed_count.json", dir);
  std::ostringstream table2, err2;
  cli::BenchOptions opts;
  opts.jobs = 1;
  EXPECT_EQ(cli::cmd_bench(dir.string(), opts, table2, err2), cli::kInputError);
  EXPECT_EQ(lines_of(table2.str()).size(), 2u);
  EXPECT_NE(err2.str().find("malformed_count.json:4:"), std::string::npos);
}

TEST(CliPlotData, EndpointsAndIntersections) {
  const auto dir = scratch_dir("plot");
  const std::string prefix = (dir / "p").string();
  std::ostringstream err;
  ASSERT_EQ(cli::cmd_plot_data(kFixtures + "/crossing_segments.json", 2, {}, prefix, err), cli::kOk);
  std::ifstream c(prefix + "_curves.csv"), x(prefix + "_intersections.csv");
  std::stringstream cs, xs;
  cs << c.rdbuf();
  xs << x.rdbuf();
  const auto cl = lines_of(cs.str());
  ASSERT_EQ(cl.size(), 5u);
  EXPECT_EQ(cl[0], "curve_id,t,x,y,z");
  EXPECT_EQ(cl[1], "1,0,0,0,0");
  EXPECT_EQ(cl[2], "1,1,1,1,0");
  EXPECT_EQ(cl[3], "2,0,1,0,0");
  EXPECT_EQ(cl[4], "2,1,0,1,0");
  const auto xl = lines_of(xs.str());
  ASSERT_EQ(xl.size(), 2u);
  EXPECT_EQ(xl[1], "0.5,0.5,0.5,0.5,0");
}

TEST(CliPlotData, SamplesInsideControlHull) {
  const auto dir = scratch_dir("plot_box");
  const std::string prefix = (dir / "p").string();
  std::ostringstream err;
  ASSERT_EQ(cli::cmd_plot_data(kFixtures + "/tangent_parabola.json", 57, [] {
              SolverConfig c;
              c.max_depth = 8;
              return c;
            }(), prefix, err),
            cli::kTruncated);
  const auto p = load_problem(kFixtures + "/tangent_parabola.json");
  std::ifstream c(prefix + "_curves.csv");
  std::stringstream cs;
  cs << c.rdbuf();
  const auto cl = lines_of(cs.str());
  ASSERT_EQ(cl.size(), 1u + 2 * 57);
  for (std::size_t k = 1; k < cl.size(); ++k) {
    const auto cell = split(cl[k]);
    const auto& pts = (cell[0] == "1" ? p.curve1 : p.curve2).control_points();
    for (int d = 0; d < 3; ++d) {
      double lo = pts[0][d], hi = pts[0][d];
      for (const auto& q : pts) lo = std::min(lo, q[d]), hi = std::max(hi, q[d]);
      const double val = std::stod(cell[2 + d]);
      EXPECT_GE(val, lo - 1e-12);
      EXPECT_LE(val, hi + 1e-12);
    }
  }
}

TEST(CliPlotData, RejectsTooFewSamples) {
  std::ostringstream err;
  EXPECT_EQ(cli::cmd_plot_data(kFixtures + "/crossing_segments.json", 1, {}, "/tmp/cci_unused", err),
            cli::kInputError);
}

}  // namespace
}  // namespace cci
