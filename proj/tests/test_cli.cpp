#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JACOBI_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(JACOBI_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, CountJson) {
  const auto r = run("count --system " + data("brusselator.ode") + " --set a=1 --set b=2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "count");
  EXPECT_EQ(j["result"]["stable_count"], 1);
  EXPECT_EQ(j["result"]["fixed_points"][0]["coordinates"]["y"]["exact"], "2");
  EXPECT_TRUE(j["diagnostics"].contains("elapsed_ms"));
}

TEST(Cli, OutputIsDeterministicApartFromTiming) {
  const std::string args = "analyze --system " + data("brusselator.ode") + " --set a=3/2 --set b=5/2";
  auto a = nlohmann::json::parse(run(args).out);
  auto b = nlohmann::json::parse(run(args).out);
  a["diagnostics"].erase("elapsed_ms");
  b["diagnostics"].erase("elapsed_ms");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("count --system " + temp_file("bad.ode", "vars: x\ndx/dt = x +\n")).code, 2);
  EXPECT_EQ(run("count --system " + data("brusselator.ode") + " --set a=-1 --set b=2").code, 3);
  EXPECT_EQ(run("count --system " + temp_file("line.ode", "vars: x, y\ndx/dt = x - y\ndy/dt = x - y\n")).code, 4);
  EXPECT_EQ(run("count --system " + data("brusselator.ode") + " --set a=1").code, 1);
  EXPECT_NE(run("no-such-command").code, 0);
}

TEST(Cli, ScanCsvHasOneRowPerGridPoint) {
  const auto r = run("scan --system " + data("brusselator.ode") +
                     " --box a=1/4:4 --box b=1/4:4 --steps a=3 --steps b=4 --conditions " + data("r0.cond"));
  ASSERT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 4 * 5);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "a,b,stable_count,status,R0");
}

TEST(Cli, EmitQeContainsHurwitzInequality) {
  const auto r = run("emit-qe --system " + data("brusselator.ode"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(> (- (* 2 c1) (* b1 b1)) 0)"), std::string::npos);
  EXPECT_NE(r.out.find("(check-sat)"), std::string::npos);
}

TEST(Cli, VerifyKccWithSymbolicChain) {
  const auto r = run("verify-kcc --system " + data("brusselator.ode") + " --chain x-1 --chain a*y-b");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["result"]["checks"][0]["identity_holds"].get<bool>());
}

TEST(Cli, SimulateCsv) {
  const auto r = run("simulate --system " + data("brusselator.ode") + " --set a=3 --set b=1 --dt 0.005");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 12), "t,norm,ratio");
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 101u);
}

TEST(Cli, CheckConditions) {
  const auto r = run("check-conditions --conditions " + data("r0.cond") + " --set a=2 --set b=1 --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "R0 0 0\n");
}

}  // namespace
